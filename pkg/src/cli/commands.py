"""Subcommand actions: each turns parsed arguments into a JSON result plus side outputs"""

import argparse
import logging
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional

from pydantic import ValidationError

from src.cli.io import read_input
from src.config import ConfigLoader, HarnessConfig
from src.errors import ConfigError, DomainError, SearchExhaustedError
from src.padic.linalg import matrix_from_json, matrix_to_json
from src.padic.scalar import bit_length_cap, format_rational, format_valuation, parse_rational
from src.reynolds import (
    check_star,
    check_star_star,
    coefficient_function,
    coefficient_module,
    project_k,
    reynolds_identity_check,
    weight_decompose,
)
from src.stability import (
    compute_constants,
    decompose_g,
    empirical_optimal_c,
    run_chain,
    run_selftest,
    run_verification,
)
from src.stability.sampling import random_group_element, worker_rng
from src.tree import (
    CompactGroupSpec,
    LatticeClass,
    apartment_projection,
    convex_hull,
    distance,
    fixed_point_in_hull,
    geodesic,
    orbit,
    y_membership,
)
from src.tree.export import to_dot
from src.tropical import LaurentPolynomial, check_midpoint_convexity, gauss_eval, tropicalize
from src.tropical.characters import point_from_json

logger = logging.getLogger(__name__)

# flag -> dotted config key
FLAG_OVERRIDES = {
    "p": "prime",
    "rep": "rep.tag",
    "degree": "rep.degree",
    "level": "level",
    "window": "window_half_length",
    "seed": "seed",
    "samples": "samples",
    "workers": "workers",
    "max_bits": "bit_length_cap",
}


@dataclass
class CommandOutput:
    result: Dict[str, Any]
    config: Optional[HarnessConfig] = None
    csv_rows: Optional[List[Dict[str, str]]] = None
    dot: Optional[str] = None
    table: Optional[str] = None
    exit_code: int = 0


def load_config(args: argparse.Namespace) -> HarnessConfig:
    """Profile or --config file, then ULTRASTAB_* variables, then flags"""
    overrides = {key: getattr(args, flag, None) for flag, key in FLAG_OVERRIDES.items()}
    loader = ConfigLoader()
    try:
        if args.config:
            return loader.load_config_path(args.config, overrides)
        return loader.get_harness_config(args.profile, args.profile_file, overrides)
    except (FileNotFoundError, KeyError, ValueError) as e:
        raise ConfigError(str(e)) from e


def _field(record: Dict[str, Any], key: str, *aliases: str) -> Any:
    for name in (key, *aliases):
        if name in record:
            return record[name]
    raise ConfigError(f"input is missing the field '{key}'")


def _parse(kind: str, parser: Callable[[Any], Any], record: Any) -> Any:
    """Malformed documents are config errors; violated preconditions stay domain errors"""
    try:
        return parser(record)
    except DomainError:
        raise
    except (KeyError, TypeError, ValueError, ValidationError) as e:
        raise ConfigError(f"malformed {kind} {record!r}: {e}") from e


def _vertex(record: Any) -> LatticeClass:
    return _parse("vertex", LatticeClass.from_json, record)


def _polynomial(record: Any) -> LaurentPolynomial:
    return _parse("Laurent polynomial", LaurentPolynomial.from_json, record)


def _vertices_json(vertices: List[LatticeClass]) -> List[Dict[str, Any]]:
    return [v.to_json() for v in vertices]


# tropical

def tropical_eval(args: argparse.Namespace) -> CommandOutput:
    record = read_input(args.input)
    f = _polynomial(_field(record, "f", "polynomial"))
    lam = point_from_json(_field(record, "lambda", "point"))
    result = {"valuation": format_valuation(gauss_eval(f, lam))}
    if not f.is_zero():
        trop = tropicalize(f)
        result["active_pieces"] = [trop.to_json()["pieces"][i] for i in trop.active_pieces(lam)]
    return CommandOutput(result)


def tropical_pieces(args: argparse.Namespace) -> CommandOutput:
    record = read_input(args.input)
    trop = tropicalize(_polynomial(_field(record, "f", "polynomial")))
    result = trop.to_json()
    rows = None
    if trop.rank == 1:
        result["breakpoints"] = [format_rational(x) for x in trop.breakpoints()]
        if args.csv:
            lower, upper = parse_rational(args.grid[0]), parse_rational(args.grid[1])
            rows = trop.sample_grid(lower, upper, int(args.grid[2]))
    elif args.csv:
        raise DomainError("rank_one", "sample grids are only produced in rank 1")
    return CommandOutput(result, csv_rows=rows)


def tropical_convexity(args: argparse.Namespace) -> CommandOutput:
    record = read_input(args.input)
    f = _polynomial(_field(record, "f", "polynomial"))
    start = point_from_json(_field(record, "lambda0", "start"))
    end = point_from_json(_field(record, "lambda1", "end"))
    return CommandOutput({"holds": check_midpoint_convexity(f, start, end)})


# tree

def _endpoints(args: argparse.Namespace) -> tuple[LatticeClass, LatticeClass]:
    record = read_input(args.input)
    return _vertex(_field(record, "u")), _vertex(_field(record, "v"))


def tree_distance(args: argparse.Namespace) -> CommandOutput:
    u, v = _endpoints(args)
    path = geodesic(u, v)
    return CommandOutput({"distance": distance(u, v), "geodesic": _vertices_json(path)}, dot=to_dot(path, (u, v), "geodesic"))


def tree_path(args: argparse.Namespace) -> CommandOutput:
    u, v = _endpoints(args)
    path = geodesic(u, v)
    return CommandOutput({"path": _vertices_json(path), "length": len(path) - 1}, dot=to_dot(path, (u, v), "path"))


def tree_hull(args: argparse.Namespace) -> CommandOutput:
    record = read_input(args.input)
    vertices = [_vertex(v) for v in _field(record, "vertices")]
    hull = convex_hull(vertices)
    return CommandOutput({"hull": _vertices_json(hull), "size": len(hull)}, dot=to_dot(hull, vertices))


def _group(record: Dict[str, Any], prime: int, level_cap: int) -> CompactGroupSpec:
    return _parse("group", lambda kind: CompactGroupSpec(kind, prime, level_cap=level_cap), record.get("group", "torus"))


def tree_orbit(args: argparse.Namespace) -> CommandOutput:
    record = read_input(args.input)
    vertex = _vertex(_field(record, "vertex"))
    K = _group(record, vertex.prime, args.level_cap)
    points = orbit(K, vertex)
    hull = convex_hull(points)
    fixed = fixed_point_in_hull(K, hull)
    result = {
        "group": K.to_json(),
        "orbit": _vertices_json(points),
        "hull_size": len(hull),
        "fixed_point": fixed.to_json(),
    }
    return CommandOutput(result, dot=to_dot(hull, points, "orbit_hull"))


def tree_fixed(args: argparse.Namespace) -> CommandOutput:
    """A fixed point of K in the hull of the given vertices, or of the orbit of one vertex"""
    record = read_input(args.input)
    if "vertices" in record:
        vertices = [_vertex(v) for v in record["vertices"]]
    else:
        vertex = _vertex(_field(record, "vertex"))
        vertices = orbit(_group(record, vertex.prime, args.level_cap), vertex)
    if not vertices:
        raise DomainError("nonempty_set", "no vertices to take the hull of")
    K = _group(record, vertices[0].prime, args.level_cap)
    hull = convex_hull(vertices)
    fixed = fixed_point_in_hull(K, hull)
    marked = [fixed.vertex] if fixed.other is None else [fixed.vertex, fixed.other]
    return CommandOutput({"group": K.to_json(), "hull_size": len(hull), "fixed_point": fixed.to_json()}, dot=to_dot(hull, marked, "fixed"))


def tree_window(args: argparse.Namespace) -> CommandOutput:
    config = load_config(args)
    window = config.window()
    result = {
        "window": _vertices_json(window),
        "size": len(window),
        "projections": [apartment_projection(v) for v in window],
    }
    return CommandOutput(result, config=config, dot=to_dot(window, name="window"))


def tree_ymember(args: argparse.Namespace) -> CommandOutput:
    config = load_config(args)
    y = matrix_from_json(_field(read_input(args.input), "y"))
    membership = y_membership(y, config.window(), config.torus())
    return CommandOutput({"y": matrix_to_json(y), **membership.to_json()}, config=config)


# rep

def rep_decompose(args: argparse.Namespace) -> CommandOutput:
    config = load_config(args)
    spec = config.rep_spec()
    result = {"weights": weight_decompose(spec).to_json(), "complement": check_star_star(spec).to_json()}
    return CommandOutput(result, config=config)


def rep_star(args: argparse.Namespace) -> CommandOutput:
    config = load_config(args)
    omega = config.omega_set()
    C = coefficient_module(config.rep_spec())
    result = {"omega": omega.to_json(), "module": C.to_json(), "star": check_star(omega, C).to_json()}
    return CommandOutput(result, config=config)


def rep_reynolds(args: argparse.Namespace) -> CommandOutput:
    config = load_config(args)
    spec = config.rep_spec()
    record = read_input(args.input)
    y = matrix_from_json(_field(record, "y"))
    v = [parse_rational(x) for x in _field(record, "v")]
    phi = [parse_rational(x) for x in _field(record, "phi")]
    f = coefficient_function(spec, y, v, phi)
    result = {
        "coefficient_function": f.to_json(),
        "projection": format_rational(project_k(coefficient_module(spec), f)),
        "identity_holds": reynolds_identity_check(spec, y, v, phi),
    }
    return CommandOutput(result, config=config)


# stability

def _constants(config: HarnessConfig):
    with bit_length_cap(config.bit_length_cap):
        return compute_constants(
            config.rep_spec(),
            config.omega_set(),
            config.norm(),
            config.window(),
            config.level,
            config.enumeration_budget,
        )


def stability_constants(args: argparse.Namespace) -> CommandOutput:
    config = load_config(args)
    return CommandOutput(_constants(config).to_json(), config=config)


def stability_verify(args: argparse.Namespace) -> CommandOutput:
    config = load_config(args)
    report = run_verification(config, _constants(config))
    return CommandOutput(report.to_json(), config=config, csv_rows=report.margin_rows())


def stability_decompose(args: argparse.Namespace) -> CommandOutput:
    config = load_config(args)
    window, H = config.window(), config.torus()
    if args.input is not None:
        g = matrix_from_json(_field(read_input(args.input), "g"))
        return CommandOutput(decompose_g(g, window, H, config.translation_units).to_json(), config=config)
    rng = worker_rng(config.seed, 3000)
    tried, failures, exponents = [], 0, []
    for _ in range(config.decomposition_samples):
        g = random_group_element(rng, config.prime, config.group_valuations.low, config.group_valuations.high)
        try:
            result = decompose_g(g, window, H, config.translation_units)
        except SearchExhaustedError as e:
            logger.error("decomposition failed: %s", e)
            failures += 1
            continue
        tried.append(result.tried)
        exponents.append(result.exponent)
    summary = {
        "samples": config.decomposition_samples,
        "failures": failures,
        "max_tried": max(tried, default=0),
        "exponent_range": [min(exponents, default=0), max(exponents, default=0)],
    }
    return CommandOutput(summary, config=config)


def stability_report(args: argparse.Namespace) -> CommandOutput:
    """Constants, chain checks, the main sweep outcome per candidate and the observed optimum"""
    config = load_config(args)
    constants = _constants(config)
    chain = run_chain(config, constants)
    report = run_verification(config, constants)
    optimal = empirical_optimal_c(report)
    result = {
        "constants": constants.to_json(),
        "chain": [r.to_json() for r in chain],
        "verification": report.model_dump(mode="json", include={"config_hash", "seed", "c_log", "violations", "candidates"}),
        "empirical_optimal_c": optimal.model_dump(mode="json"),
    }
    return CommandOutput(result, config=config, csv_rows=report.margin_rows())


def selftest(args: argparse.Namespace) -> CommandOutput:
    config = load_config(args)
    report = run_selftest(config, args.samples)
    return CommandOutput(report.to_json(), config=config, table=report.table(), exit_code=0 if report.passed else 1)


ACTIONS: Dict[str, Dict[str, Callable[[argparse.Namespace], CommandOutput]]] = {
    "tropical": {
        "eval": tropical_eval,
        "pieces": tropical_pieces,
        "convexity": tropical_convexity,
    },
    "tree": {
        "distance": tree_distance,
        "path": tree_path,
        "hull": tree_hull,
        "orbit": tree_orbit,
        "fixed": tree_fixed,
        "window": tree_window,
        "ymember": tree_ymember,
    },
    "rep": {
        "decompose": rep_decompose,
        "reynolds": rep_reynolds,
        "star": rep_star,
    },
    "stability": {
        "constants": stability_constants,
        "verify": stability_verify,
        "decompose": stability_decompose,
        "report": stability_report,
    },
}

# older action names, kept working
ALIASES: Dict[str, Dict[str, str]] = {
    "tropical": {"gauss": "eval", "tropicalize": "pieces"},
    "tree": {"membership": "ymember"},
    "rep": {"weights": "decompose"},
    "stability": {},
}


def resolve_action(command: str, action: str) -> str:
    return ALIASES[command].get(action, action)
