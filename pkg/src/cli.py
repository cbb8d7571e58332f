"""
Command-line front end.

Every subcommand runs the matching tool function with a local client and
prints its result: the data document in JSON mode, a readable report in
human mode. Exit codes: 0 success, 2 validation failure, 1 internal error.
"""

import argparse
import logging
import sys
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Sequence

from src.client import OrbifoldClient
from src.codec import dumps
from src.config import FORMATS, MODES, settings
from src.poly import LinearForm
from src.tools import (
    cmd_cohomology,
    cmd_derive,
    cmd_faces,
    cmd_lattice,
    cmd_polygon,
    cmd_thom,
    cmd_validate,
    cmd_verify,
    list_fixtures,
)

EXIT_OK, EXIT_INTERNAL, EXIT_VALIDATION = 0, 1, 2

COMMANDS = ("validate", "derive", "faces", "thom", "lattice", "cohomology", "polygon", "verify", "fixtures")


@dataclass
class RunConfig:
    command: str
    input_path: Optional[str] = None
    fixture: Optional[str] = None
    degree: Optional[int] = None
    max_degree: Optional[int] = None
    mode: str = settings.default_mode
    fmt: str = settings.default_format
    face: Optional[str] = None
    gkm: bool = False
    allow_gcd: bool = False

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"Unknown command {self.command!r}.")
        if self.command != "fixtures" and (self.input_path is None) == (self.fixture is None):
            raise ValueError("Give exactly one of --input and --fixture.")
        for flag, value in (("--degree", self.degree), ("--max-degree", self.max_degree)):
            if value is not None and value < 0:
                raise ValueError(f"{flag} must be non-negative, got {value}.")
        if self.command == "lattice" and self.degree is None:
            raise ValueError("lattice needs --degree.")
        if self.mode not in MODES:
            raise ValueError(f"--mode must be one of {MODES}.")
        if self.fmt not in FORMATS:
            raise ValueError(f"--format must be one of {FORMATS}.")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="torus-orbifold",
        description="Integral equivariant cohomology of torus orbifolds, computed combinatorially.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--format", dest="fmt", choices=FORMATS, default=settings.default_format)
        if name != "fixtures":
            source = p.add_mutually_exclusive_group(required=True)
            source.add_argument("--input", dest="input_path", metavar="PATH", help="JSON graph, pair or polygon")
            source.add_argument("--fixture", metavar="NAME", help="built-in fixture (see 'fixtures')")
        return p

    command("validate", "check the graph (or pair) axioms").add_argument(
        "--gkm", action="store_true", help="check only the GKM axioms")
    command("derive", "derive the torus graph of a characteristic pair")
    command("faces", "list the face poset")
    command("thom", "Thom classes and minimal multipliers").add_argument("--face", metavar="NAME")
    command("lattice", "integrality lattice in one degree").add_argument(
        "--degree", type=int, required=True, help="cohomological degree 2d")
    p = command("cohomology", "graded bases and ordinary ranks")
    p.add_argument("--max-degree", type=int, default=2, help="largest polynomial degree d")
    p.add_argument("--mode", choices=MODES, default=settings.default_mode)
    p = command("polygon", "generator lattice of a polygon pair")
    p.add_argument("--degree", type=int, default=2, choices=(2, 4), help="cohomological degree 2n")
    p.add_argument("--allow-gcd", action="store_true", help="ignore the gcd condition")
    command("verify", "degreewise isomorphism check").add_argument(
        "--max-degree", type=int, default=2, help="check polynomial degrees 1..d")
    command("fixtures", "list the built-in fixtures")
    return parser


def parse_args(argv: Optional[Sequence[str]] = None) -> RunConfig:
    args = vars(build_parser().parse_args(argv))
    fields = RunConfig.__dataclass_fields__
    return RunConfig(**{k: v for k, v in args.items() if k in fields})


def run(config: RunConfig, client: Optional[OrbifoldClient] = None) -> dict:
    """Dispatch to the tool function; returns its envelope."""
    client = client or OrbifoldClient()
    source = {"input_path": config.input_path, "fixture": config.fixture}
    if config.command == "validate":
        return cmd_validate(client, gkm=config.gkm, **source)
    if config.command == "derive":
        return cmd_derive(client, **source)
    if config.command == "faces":
        return cmd_faces(client, **source)
    if config.command == "thom":
        return cmd_thom(client, face=config.face, **source)
    if config.command == "lattice":
        return cmd_lattice(client, config.degree, **source)
    if config.command == "cohomology":
        return cmd_cohomology(client, config.max_degree, mode=config.mode, **source)
    if config.command == "polygon":
        return cmd_polygon(client, degree=config.degree, allow_gcd=config.allow_gcd, **source)
    if config.command == "verify":
        return cmd_verify(client, config.max_degree, **source)
    return list_fixtures(client)


# --------------------------------------------------------------------------
# Human-readable reports
# --------------------------------------------------------------------------

def _form(values: Sequence[str]) -> str:
    return LinearForm.of(values).render()


def _validate_lines(data: Dict[str, Any]) -> List[str]:
    lines = [f"{data['kind']} ({data['mode']} mode): {'valid' if data['valid'] else 'INVALID'}"]
    for v in data["violations"]:
        where = f" at {v['vertex']}" if "vertex" in v else ""
        lines.append(f"  violation [{v['kind']}]{where}: {v['message']}")
    for w in data["warnings"]:
        lines.append(f"  warning [{w['kind']}]: {w['message']}")
    for vertex, det in data.get("vertex_determinants", {}).items():
        lines.append(f"  |det Lambda| at {vertex}: {det}")
    return lines


def _derive_lines(data: Dict[str, Any]) -> List[str]:
    lines = [f"torus rank {data['torus_rank']}, {len(data['vertices'])} vertices, {len(data['edges'])} edges"]
    dets = data.get("vertex_determinants", {})
    for v in data["vertices"]:
        lines.append(f"{v}  |det| = {dets.get(v, '?')}")
        for e in data["edges"]:
            if e["from"] == v:
                lines.append(f"  -> {e['to']}: {_form(e['alpha_from'])}")
            if e["to"] == v:
                lines.append(f"  -> {e['from']}: {_form(e['alpha_to'])}")
    return lines


def _faces_lines(data: Dict[str, Any]) -> List[str]:
    counts = ", ".join(f"dim {d}: {c}" for d, c in sorted(data["counts"].items(), key=lambda kv: int(kv[0])))
    lines = [counts]
    for f in data["faces"]:
        lines.append(f"  [{f['dim']}] {f['name']}: vertices {', '.join(f['vertices'])}")
    return lines


def _thom_lines(data: Dict[str, Any]) -> List[str]:
    lines = []
    for f in data["faces"]:
        extra = f", lcm bound {f['lcm_bound']}" if "lcm_bound" in f else ""
        lines.append(f"x[{f['name']}] (degree {f['degree']}): minimal multiplier {f['minimal_multiplier']}{extra}")
        for vertex, value in f["values"].items():
            if value != "0":
                lines.append(f"  {vertex}: {value}")
    for element in data.get("linear_elements", []):
        lines.append(f"linear element: {element}")
    return lines


def _lattice_lines(data: Dict[str, Any]) -> List[str]:
    index = f", index {data['index']}" if "index" in data else ""
    lines = [f"degree {data['degree']}: rank {data['rank']} over {len(data['monomials'])} monomials{index}"]
    lines.append("  monomials: " + ", ".join(data["monomials"]))
    lines.extend(f"  {row}" for row in data["hnf_basis"])
    return lines


def _cohomology_lines(data: Dict[str, Any]) -> List[str]:
    lines = []
    for entry in data["degrees"]:
        lines.append(f"H^{entry['degree']} ({data['mode']}): rank {entry['rank']}")
        for i, values in enumerate(entry.get("basis", []), start=1):
            lines.append(f"  b{i}: " + "; ".join(f"{v}={p}" for v, p in values.items()))
    ranks = ", ".join(f"{deg}:{rank}" for deg, rank in data["ordinary_ranks"])
    lines.append(f"ordinary ranks over Q: {ranks} ({'palindromic' if data['palindromic'] else 'not palindromic'})")
    return lines


def _polygon_lines(data: Dict[str, Any]) -> List[str]:
    lines = [f"D = {data['determinants']}, gcd {data['gcd']}: {'ok' if data['gcd_ok'] else 'fails'}"]
    if "hnf_basis" in data:
        lines.append(f"degree {data['degree']} generator lattice, rank {data['rank']}:")
        lines.extend(f"  {row}" for row in data["hnf_basis"])
        lines.extend(f"  g{i}: {g}" for i, g in enumerate(data["generators"], start=1))
    return lines


def _verify_lines(data: Dict[str, Any]) -> List[str]:
    lines = []
    for r in data["degrees"]:
        lines.append(
            f"degree {r['degree']}: {'ok' if r['ok'] else 'FAILED'} "
            f"(image rank {r['image_rank']}, class rank {r['class_rank']}, "
            f"surjective {r['surjective']}, relations vanish {r['relations_vanish']})")
    return lines


def _fixtures_lines(data: Dict[str, Any]) -> List[str]:
    return [f"{f['name']:<22} {f['kind']:<8} {f['description']}" for f in data["fixtures"]]


RENDERERS: Dict[str, Callable[[Dict[str, Any]], List[str]]] = {
    "validate": _validate_lines,
    "derive": _derive_lines,
    "faces": _faces_lines,
    "thom": _thom_lines,
    "lattice": _lattice_lines,
    "cohomology": _cohomology_lines,
    "polygon": _polygon_lines,
    "verify": _verify_lines,
    "fixtures": _fixtures_lines,
}


def render(config: RunConfig, result: dict) -> str:
    if config.fmt == "json":
        return dumps(result["data"] if result["successful"] else result)
    if not result.get("data"):
        return ""
    return "\n".join(RENDERERS[config.command](result["data"]))


def exit_code(result: dict) -> int:
    if result["successful"]:
        return EXIT_OK
    return EXIT_VALIDATION if result.get("error_type") == "validation" else EXIT_INTERNAL


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(level=settings.log_level, format="%(asctime)s %(levelname)s [%(name)s] %(message)s")
    try:
        config = parse_args(argv)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    result = run(config)
    text = render(config, result)
    if text:
        print(text)
    if not result["successful"]:
        print(f"error: {result['error']}", file=sys.stderr)
    return exit_code(result)


if __name__ == "__main__":
    sys.exit(main())
