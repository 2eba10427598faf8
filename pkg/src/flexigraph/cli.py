"""Command-line front end.

Exit codes: 0 PASS, 1 FAIL or parse error, 2 resource cap / overflow /
unsupported parameters.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from dataclasses import dataclass
from pathlib import Path

from .errors import ParseError, ResourceCapExceeded, UnsupportedEll

BYTES_PER_ITEM = 256


@dataclass
class RunConfig:
    command: str
    ell: int | None = None
    rank: int = 3
    radius: int | None = None
    max_cosets: int = 1_000_000
    out: str | None = None
    format: str = "json"
    seed: int = 7
    samples: int | None = None
    max_n: int = 2000
    cap_mb: int = 512

    @property
    def max_count(self) -> int:
        return self.cap_mb * 2**20 // BYTES_PER_ITEM


def write_atomic(path: str | Path, data: bytes | str) -> None:
    path = Path(path)
    if isinstance(data, str):
        data = data.encode("utf-8")
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % p for p in range(2, int(n**0.5) + 1))


def _check_desk_ell(ell: int) -> None:
    if ell not in (2, 3):
        raise UnsupportedEll("desk-scale bound: ell ∈ {2,3}")


def cmd_build(cfg: RunConfig) -> int:
    from .graph6 import to_graph6
    from .graphs import certify_flexible

    _check_desk_ell(cfg.ell)
    b = certify_flexible(cfg.ell, cfg.max_n)
    out = Path(cfg.out or (f"gamma{cfg.ell}.json" if cfg.format == "json" else f"gamma{cfg.ell}.g6"))
    if cfg.format == "graph6":
        write_atomic(out, to_graph6(b.split.graph) + b"\n")
    else:
        write_atomic(out, _dump(b.split.graph.to_json(two_factor=b.cycles)))
    cert_path = out.with_name(out.stem + ".cert.json")
    cert = b.certificate.to_json() + "\n"
    write_atomic(cert_path, cert)
    sys.stdout.write(cert)
    if b.certificate.verdict != "PASS":
        print("build: certificate verdict FAIL", file=sys.stderr)
        return 1
    return 0


def cmd_oracle(cfg: RunConfig, which: str) -> int:
    from . import membership, nilq

    if which == "theoremB":
        if cfg.ell is None or not _is_prime(cfg.ell):
            raise UnsupportedEll("theoremB needs a prime --ell")
        report = membership.verify_power_gamma(cfg.rank, cfg.ell, cfg.max_count)
    elif which == "lemma43":
        if cfg.ell is None or cfg.ell < 2:
            raise UnsupportedEll("lemma43 needs --ell >= 2")
        report = membership.verify_normal_closure_ball(cfg.ell, cfg.max_count)
    elif which == "balls":
        _check_desk_ell(cfg.ell)
        radius = cfg.radius if cfg.radius is not None else 4 * cfg.ell + 1
        report = nilq.ball_report(cfg.ell, radius, cfg.max_count)
    elif which == "fox":
        report = membership.fox_suite(cfg.samples or 1000, cfg.seed)
        report["summary"] = f"{report['matches']}/{report['samples']} exact matches"
    elif which == "magnus":
        report = membership.magnus_suite(cfg.samples or 200, cfg.seed)
    elif which == "relators":
        report = relator_report()
    else:
        raise ValueError(which)
    text = _dump(report)
    if cfg.out:
        write_atomic(cfg.out, text)
    sys.stdout.write(text)
    return 0 if report["verdict"] in ("PASS", "INFO") else 1


def relator_report() -> dict:
    """Degree-8 candidate images versus the adopted D4 x C2 model."""
    from . import amalgam

    candidate = amalgam.check_relators(amalgam.SYM8_CANDIDATE_IMAGES, 8)
    adopted = {name: amalgam.phi(amalgam.gword(text)) == amalgam.IMAGE_IDENTITY
               for name, text in amalgam.G_RELATORS.items()}
    order = len(amalgam.image_closure([amalgam.phi(g) for g in (amalgam.A, amalgam.B, amalgam.Z)]))
    failing = sorted({name for conv in candidate.values() for name, ok in conv.items() if not ok})
    ok = all(adopted.values()) and order == 16 and all(
        not conv["[ab,z]"] for conv in candidate.values())
    return {
        "oracle": "relators",
        "claim": "the degree-8 candidate images violate [ab,z] under both composition "
                 "conventions; the D4 x C2 model satisfies every relator",
        "candidate_images": {k: [list(c) for c in v] for k, v in amalgam.SYM8_CANDIDATE_IMAGES.items()},
        "candidate": candidate,
        "candidate_failing": failing,
        "adopted": adopted,
        "adopted_image_order": order,
        "verdict": "PASS" if ok else "FAIL",
    }


def cmd_tc(path: str, subgroup: str, max_cosets: int) -> int:
    from .cosetenum import parse_presentation, parse_word_list, todd_coxeter

    text = Path(path).read_text(encoding="utf-8")
    p = parse_presentation(text)
    subs = parse_word_list(subgroup, p.generators)
    table = todd_coxeter(p, subs, max_cosets)
    if not table.complete:
        print("overflow")
        return 2
    print(f"index {table.index}")
    return 0


def cmd_presentation(name: str, ell: int | None) -> int:
    from .cosetenum import G_PRESENTATION, p_presentation_text

    if name == "G":
        sys.stdout.write(G_PRESENTATION)
    else:
        _check_desk_ell(ell)
        sys.stdout.write(p_presentation_text(ell))
    return 0


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="flexigraph", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="construct and certify Gamma_ell")
    b.add_argument("--ell", type=int, required=True)
    b.add_argument("--out")
    b.add_argument("--format", choices=("json", "graph6"), default="json")
    b.add_argument("--max-n", type=int, default=2000)
    b.add_argument("--seed", type=int, default=7)

    o = sub.add_parser("oracle", help="run a word-length oracle")
    o.add_argument("which", choices=("theoremB", "lemma43", "balls", "fox", "magnus", "relators"))
    o.add_argument("--ell", type=int)
    o.add_argument("--rank", type=int, default=3)
    o.add_argument("--radius", type=int)
    o.add_argument("--samples", type=int)
    o.add_argument("--seed", type=int, default=7)
    o.add_argument("--out")

    t = sub.add_parser("tc", help="Todd-Coxeter index of a subgroup")
    t.add_argument("presentation")
    t.add_argument("--subgroup", default="", help="comma-separated generator words")
    t.add_argument("--max-cosets", type=int, default=1_000_000)

    p = sub.add_parser("presentation", help="print a built-in presentation")
    p.add_argument("name", choices=("G", "P"))
    p.add_argument("--ell", type=int)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    cap_mb = int(os.environ.get("FLEXIGRAPH_CAP_MB", "512"))
    try:
        if args.command == "build":
            cfg = RunConfig("build", ell=args.ell, out=args.out, format=args.format,
                            seed=args.seed, max_n=args.max_n, cap_mb=cap_mb)
            return cmd_build(cfg)
        if args.command == "oracle":
            cfg = RunConfig("oracle", ell=args.ell, rank=args.rank, radius=args.radius,
                            out=args.out, seed=args.seed, samples=args.samples, cap_mb=cap_mb)
            return cmd_oracle(cfg, args.which)
        if args.command == "tc":
            return cmd_tc(args.presentation, args.subgroup, args.max_cosets)
        return cmd_presentation(args.name, args.ell)
    except (UnsupportedEll, ResourceCapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
