"""
Workspace-restricted input resolution for the orbifold MCP server.

When the server runs with WORKSPACE_PATH set, graph and pair documents may
only be read from inside that directory: absolute paths, `..` traversal and
symlinks leading outside are rejected.
"""

import os
import logging
from typing import Optional

from src.config import settings

_logger = logging.getLogger(__name__)


def get_workspace(workspace: Optional[str] = None) -> str:
    """
    Return the resolved workspace directory.

    Raises:
        PermissionError: If no workspace is configured or it is not a directory.
    """
    workspace = workspace or settings.workspace_path
    if not workspace:
        raise PermissionError(
            "Server configuration error: WORKSPACE_PATH is not set, so input files cannot be read. "
            "Use a fixture name or set WORKSPACE_PATH to the folder holding your graph files."
        )
    resolved = os.path.realpath(os.path.expanduser(workspace))
    if not os.path.isdir(resolved):
        raise PermissionError(f"Server configuration error: WORKSPACE_PATH '{workspace}' is not a directory.")
    return resolved


def resolve_workspace_file(filename: str, must_exist: bool = False, workspace: Optional[str] = None) -> str:
    """
    Resolve a relative input path to an absolute path inside the workspace.

    Raises:
        ValueError: If filename is empty.
        PermissionError: If the path is absolute or escapes the workspace.
        FileNotFoundError: If must_exist is set and the file is missing.
    """
    if not filename or not filename.strip():
        raise ValueError("Input path cannot be empty.")
    ws_real = get_workspace(workspace)

    if os.path.isabs(filename):
        raise PermissionError("Access denied: give the input path relative to the workspace.")
    normalized = os.path.normpath(filename)
    if normalized == ".." or normalized.startswith(".." + os.sep) or os.sep + ".." in normalized:
        raise PermissionError("Access denied: path traversal is not allowed.")

    abs_path = os.path.realpath(os.path.join(ws_real, normalized))
    try:
        common = os.path.commonpath([abs_path, ws_real])
    except ValueError:
        raise PermissionError("Access denied: input is on a different drive than the workspace.")
    if common != ws_real:
        raise PermissionError("Access denied: input resolves outside the workspace.")

    if must_exist and not os.path.isfile(abs_path):
        raise FileNotFoundError(f"Input not found in workspace: {filename}")
    _logger.debug("Resolved %s inside the workspace", filename)
    return abs_path


def to_filename(abs_path: str, workspace: Optional[str] = None) -> str:
    """Workspace-relative form of a path, so replies never expose server paths."""
    if not abs_path:
        return abs_path
    try:
        rel = os.path.relpath(abs_path, get_workspace(workspace))
    except (PermissionError, ValueError):
        return os.path.basename(abs_path)
    return os.path.basename(abs_path) if rel.startswith("..") else rel


def is_workspace_configured() -> bool:
    try:
        get_workspace()
        return True
    except PermissionError:
        return False
