"""
Torus Orbifold MCP Server - Main Entry Point
"""

import importlib
import inspect
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, Optional

# Add parent directory to path for imports
sys.path.insert(0, str(Path(__file__).resolve().parents[1]))

from fastmcp import FastMCP
from fastmcp.tools import FunctionTool
from dotenv import load_dotenv

# Load .env from CWD
load_dotenv()

from src.config import settings
from src.client import OrbifoldClient

logging.basicConfig(level=logging.INFO, format="%(asctime)s %(levelname)s [%(name)s] %(message)s")
logger = logging.getLogger(settings.server_name)

# Root path for manifest loading
ROOT_DIR = Path(__file__).resolve().parents[1]

# Server State
state: Dict[str, Any] = {}

mcp = FastMCP(settings.server_name)


def get_client() -> OrbifoldClient:
    """Get or create the server's OrbifoldClient; file inputs stay inside WORKSPACE_PATH."""
    if "client" not in state:
        logger.info("Initializing OrbifoldClient...")
        state["client"] = OrbifoldClient(restrict_to_workspace=True)
    return state["client"]


def remove_null_from_schema(schema):
    """Strip null alternatives and None defaults so MCP inspectors see plain types."""
    if isinstance(schema, list):
        return [remove_null_from_schema(item) for item in schema]
    if not isinstance(schema, dict):
        return schema
    cleaned: Dict[str, Any] = {}
    for key, value in schema.items():
        if key == "anyOf" and isinstance(value, list):
            kept = [v for v in value if not (isinstance(v, dict) and v.get("type") == "null")]
            if len(kept) == 1:
                cleaned.update(remove_null_from_schema(kept[0]))
            elif kept:
                cleaned[key] = remove_null_from_schema(kept)
        elif key == "type" and isinstance(value, list):
            kept = [v for v in value if v != "null"]
            cleaned["type"] = kept[0] if len(kept) == 1 else kept
        elif (key == "type" and value == "null") or (key == "default" and value is None):
            continue
        else:
            cleaned[key] = remove_null_from_schema(value)
    return cleaned


def load_manifest(path: Optional[Path] = None) -> Dict[str, Any]:
    path = path or ROOT_DIR / "tools_manifest.json"
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)


def register_tools() -> int:
    """Register the tools listed in tools_manifest.json; returns how many were added."""
    try:
        manifest = load_manifest()
    except (OSError, json.JSONDecodeError) as e:
        logger.error(f"Failed to load manifest: {e}")
        return 0

    registered = 0
    for entry in manifest.get("tools", []):
        tool_id, target = entry.get("id"), entry.get("target")
        if not tool_id or not target:
            continue
        try:
            module_name, func_name = target.split(":")
            func = getattr(importlib.import_module(module_name), func_name)
        except (ValueError, ImportError, AttributeError) as e:
            logger.error(f"Failed to import {target}: {e}")
            continue

        description = entry.get("description")
        tool = FunctionTool.from_function(create_dynamic_wrapper(func, description, tool_id),
                                          name=tool_id, description=description)
        if entry.get("input_schema"):
            tool.parameters = remove_null_from_schema(entry["input_schema"])
        mcp.add_tool(tool)
        registered += 1
        logger.info(f"Registered tool: {tool_id}")

    logger.info(f"Total tools registered: {registered}")
    return registered


def create_dynamic_wrapper(func, description=None, tool_id=None):
    """
    Wrap a tool function so MCP sees its signature without 'client' and the
    session client is injected on every call. Empty strings and empty objects
    sent for optional arguments are treated as omitted.
    """
    sig = inspect.signature(func)
    params = [p for p in sig.parameters.values() if p.name != "client"]
    optional = {p.name for p in params if p.default is not inspect.Parameter.empty}

    def wrapper(**kwargs):
        for name in optional & kwargs.keys():
            value = kwargs[name]
            if isinstance(value, (str, dict)) and len(value) == 0:
                kwargs[name] = None
        return func(client=get_client(), **kwargs)

    wrapper.__signature__ = sig.replace(parameters=params)
    wrapper.__name__ = tool_id or func.__name__
    wrapper.__doc__ = description or func.__doc__
    wrapper.__annotations__ = {k: v for k, v in getattr(func, "__annotations__", {}).items() if k != "client"}
    return wrapper


def main():
    """Main entry point."""
    register_tools()
    mcp.run()


if __name__ == "__main__":
    main()
