"""``cvml`` command line: classify, converge, cauchy, topology, diam, ball.

Every command reads one JSON document (or a CSV matrix for spaces) and
writes a JSON report.  Analysis verdicts always exit 0; operational
failures exit 2 (parse/invalid input), 3 (distance out of range) or
4 (unknown label).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import sequences as seqs
from . import topology as topo
from .io import ParseError, distance_from, load_document, parse_points, space_from
from .order import (
    CVMLError,
    InvalidInputError,
    RangeError,
    UnknownLabelError,
    as_complex,
    to_pair,
)
from .spaces import AxiomClass, check_axioms, user_matrix

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_RANGE = 3
EXIT_LABEL = 4


@dataclass(frozen=True)
class RunConfig:
    eps: float = 1e-9
    horizon: int = seqs.DEFAULT_HORIZON
    tail: int = seqs.DEFAULT_TAIL
    threshold: float = seqs.DEFAULT_THRESHOLD
    output: str = "-"

    def __post_init__(self):
        if self.eps < 0 or self.threshold <= 0 or self.horizon <= 0 or self.tail <= 0:
            raise InvalidInputError("numeric options must be positive")
        if self.tail >= self.horizon:
            raise InvalidInputError("tail must be smaller than horizon")


def _point(p):
    return p if isinstance(p, str) else to_pair(p)


def _report(command: str, cfg: RunConfig, **body) -> dict:
    return {"schema_version": SCHEMA_VERSION, "command": command,
            "config": {"eps": cfg.eps, "horizon": cfg.horizon, "tail": cfg.tail,
                       "threshold": cfg.threshold},
            **body}


def cmd_classify(doc, cfg: RunConfig) -> dict:
    space = space_from(doc, cfg.eps)
    if space is None:
        raise InvalidInputError('classify needs a space or a distance with "points"')
    reports = {cls.value: check_axioms(space, cls, cfg.eps) for cls in AxiomClass}
    return _report(
        "classify", cfg,
        labels=list(space.labels),
        classes=[name for name, rep in reports.items() if rep.passed],
        reports={name: rep.to_json(limit=3) for name, rep in reports.items()},
    )


def _sequence(doc, cfg: RunConfig) -> seqs.SequenceSpec:
    if "sequence" not in doc:
        raise InvalidInputError('input needs a "sequence"')
    s = dict(doc["sequence"])
    s.setdefault("n_max", cfg.horizon)
    return seqs.SequenceSpec.from_json(s)


def cmd_converge(doc, cfg: RunConfig) -> dict:
    d = distance_from(doc, cfg.eps)
    seq = _sequence(doc, cfg)
    candidates = parse_points(doc.get("candidates", []))
    verdicts = seqs.limit_verdicts(d, seq, candidates, eps=cfg.eps,
                                   threshold=cfg.threshold, tail=cfg.tail)
    limits = [v.candidate for v in verdicts if v.converges]
    return _report(
        "converge", cfg,
        distance=d.to_json(),
        sequence=seq.to_json(),
        candidates=[v.to_json() for v in verdicts],
        limits=[_point(p) for p in limits],
        quasi_equal=[[_point(a), _point(b)] for a, b in seqs.quasi_equal_pairs(limits)],
    )


def cmd_cauchy(doc, cfg: RunConfig) -> dict:
    d = distance_from(doc, cfg.eps)
    seq = _sequence(doc, cfg)
    verdict = seqs.check_cauchy(d, seq, eps=cfg.eps, threshold=cfg.threshold, tail=cfg.tail)
    return _report("cauchy", cfg, distance=d.to_json(), sequence=seq.to_json(),
                   **verdict.to_json())


def _sample_points(conf: dict):
    mode = conf.get("mode", "grid")
    if "annulus" in conf:
        inner, outer = (float(v) for v in conf["annulus"])
        if mode == "grid":
            return topo.annulus_grid(inner, outer, float(conf.get("step", 0.05)))
        if mode == "monte_carlo":
            return topo.annulus_monte_carlo(inner, outer, int(conf.get("n", 10000)),
                                            int(conf.get("seed", 0)))
    elif "box" in conf and mode == "grid":
        xmin, xmax, ymin, ymax = (float(v) for v in conf["box"])
        return topo.grid_sample(xmin, xmax, ymin, ymax, float(conf.get("step", 0.05)))
    raise InvalidInputError(f"unsupported sampling config {conf!r}")


def _diameter(d, points, conf, cfg: RunConfig) -> dict:
    if isinstance(conf, dict) and conf.get("mode") in ("grid", "monte_carlo"):
        if d.is_finite:
            raise InvalidInputError("sampling needs an analytic distance")
        res = topo.diam_c(_sample_points(conf), d, cfg.eps, sampled=True)
        return {"mode": conf["mode"], **res.to_json()}
    return {"mode": "exact", **topo.diam_c(points, d, cfg.eps).to_json()}


def _balls(d, queries, members_of, cfg: RunConfig) -> list:
    out = []
    for q in queries:
        center = q["center"] if isinstance(q["center"], str) else as_complex(q["center"])
        ball = topo.BallSpec(center, as_complex(q["radius"]))
        pts = parse_points(q["points"]) if "points" in q else members_of
        inside = topo.ball_members(d, ball, pts, cfg.eps)
        out.append({"center": _point(center), "radius": to_pair(ball.radius),
                    "members": [_point(p) for p in inside]})
    return out


def cmd_topology(doc, cfg: RunConfig) -> dict:
    space = space_from(doc, cfg.eps)
    conf = doc.get("diameter")
    sampled = isinstance(conf, dict) and conf.get("mode") in ("grid", "monte_carlo")
    body: dict = {}
    if space is not None:
        subset = doc.get("subset", [])
        if not isinstance(subset, list):
            raise InvalidInputError("subset must be a list of labels")
        subset = [str(a) for a in subset]
        for a in subset:
            space.index(a)
        d = user_matrix(space)
        body = {
            "labels": list(space.labels),
            "subset": subset,
            "closure": topo.closure(space, subset, cfg.eps),
            "limit_points": topo.limit_points(space, subset, cfg.eps),
            "closed": topo.is_closed(space, subset, cfg.eps),
            "balls": _balls(d, doc.get("balls", []), list(space.labels), cfg),
        }
        if conf and not sampled:
            body["diameter"] = _diameter(d, subset, conf, cfg) if subset else None
    elif not sampled:
        raise InvalidInputError("topology needs a space (or a sampled diameter query)")
    if sampled:
        body["diameter"] = _diameter(distance_from(doc, cfg.eps), None, conf, cfg)
    return _report("topology", cfg, **body)


def cmd_diam(doc, cfg: RunConfig) -> dict:
    d = distance_from(doc, cfg.eps)
    conf = doc.get("sampling")
    if conf:
        return _report("diam", cfg, distance=d.to_json() if not d.is_finite else None,
                       diameter=_diameter(d, None, conf, cfg))
    if "points" in doc:
        points = parse_points(doc["points"])
    elif d.is_finite:
        points = doc.get("subset") or list(d.space.labels)
    else:
        raise InvalidInputError('diam needs "points" or a "sampling" config')
    return _report("diam", cfg, diameter=_diameter(d, points, True, cfg))


def cmd_ball(doc, cfg: RunConfig) -> dict:
    d = distance_from(doc, cfg.eps)
    default = list(d.space.labels) if d.is_finite else []
    pts = parse_points(doc["points"]) if "points" in doc else default
    q = {"center": doc.get("center"), "radius": doc.get("radius"), "points": pts}
    if q["center"] is None or q["radius"] is None:
        raise InvalidInputError('ball needs "center" and "radius"')
    q["points"] = [_point(p) for p in pts]
    return _report("ball", cfg, balls=_balls(d, [q], pts, cfg))


COMMANDS = {
    "classify": cmd_classify,
    "converge": cmd_converge,
    "cauchy": cmd_cauchy,
    "topology": cmd_topology,
    "diam": cmd_diam,
    "ball": cmd_ball,
}


def _global_flags(suppress: bool) -> argparse.ArgumentParser:
    # flags are accepted before or after the subcommand; the subcommand copy
    # must not reset values given earlier
    def default(value):
        return argparse.SUPPRESS if suppress else value

    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--eps", type=float, default=default(1e-9),
                   help="per-component comparison slack (default 1e-9)")
    p.add_argument("--horizon", type=int, default=default(seqs.DEFAULT_HORIZON))
    p.add_argument("--tail", type=int, default=default(seqs.DEFAULT_TAIL))
    p.add_argument("--threshold", type=float, default=default(seqs.DEFAULT_THRESHOLD),
                   help="residual threshold for convergence and Cauchy tests")
    p.add_argument("--output", "-o", default=default("-"),
                   help="report path (default stdout)")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cvml", parents=[_global_flags(False)],
                                     description="Complex valued metric-like space toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)
    flags = _global_flags(True)
    for name, fn in COMMANDS.items():
        p = sub.add_parser(name, parents=[flags], help=(fn.__doc__ or name).strip())
        p.add_argument("input", help="JSON document, CSV matrix, or - for stdin")
    return parser


def run(argv=None) -> tuple[int, str]:
    """Run the CLI; returns ``(exit status, report text or error message)``."""
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(args.eps, args.horizon, args.tail, args.threshold, args.output)
        doc = load_document(args.input)
        report = COMMANDS[args.command](doc, cfg)
    except UnknownLabelError as exc:
        return EXIT_LABEL, f"error: {exc}"
    except RangeError as exc:
        return EXIT_RANGE, f"error: {exc}"
    except (ParseError, CVMLError) as exc:
        return EXIT_PARSE, f"error: {exc}"
    except (KeyError, TypeError, ValueError) as exc:
        return EXIT_PARSE, f"error: malformed input: {exc}"
    text = json.dumps(report, indent=2) + "\n"
    if cfg.output != "-":
        with open(cfg.output, "w") as fh:
            fh.write(text)
    return EXIT_OK, text


def main(argv=None) -> int:
    status, text = run(argv)
    if status != EXIT_OK:
        print(text, file=sys.stderr)
    elif build_parser().parse_args(argv).output == "-":
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
