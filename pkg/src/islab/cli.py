"""`islab` command-line front end."""

from __future__ import annotations

import argparse
import datetime as _dt
import json
import logging
import os
import sys

from . import __version__
from .cache import ComplexityCache, default_cache_dir
from .config import ConfigError, MissingInput, execute, load_config
from .cybernetic import ScaleLimitError
from .measures import IdentityViolation
from .refmachine import MACHINE_VERSION, check_bits, encode_pair, encode_set, run

EXIT_OK, EXIT_SCHEMA, EXIT_MISSING, EXIT_SCALE, EXIT_VERIFY = 0, 2, 3, 4, 5

log = logging.getLogger("islab")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def render_report(body: dict, timestamp: str | None = None) -> str:
    """Header line (timestamp, tool version) followed by the deterministic body."""
    header = {"islab": __version__, "timestamp": timestamp or _dt.datetime.now(_dt.timezone.utc).isoformat()}
    return json.dumps({"header": header}, sort_keys=True) + "\n" + _dump(body)


def cmd_run(args) -> int:
    config, base = load_config(args.config)
    cache = ComplexityCache(args.cache_dir) if not args.no_cache else None
    body, csv_text = execute(config, base, workers=args.workers, cache=cache)
    text = render_report(body)
    if "output" in config:
        out = base / config["output"]
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text)
        log.info("report written to %s", out)
    else:
        sys.stdout.write(text)
    if csv_text is not None and "csv" in config:
        (base / config["csv"]).write_text(csv_text)
    return EXIT_OK


def cmd_machine(args) -> int:
    check_bits(args.program)
    check_bits(args.aux)
    out = run(args.program, args.aux, args.max_steps)
    sys.stdout.write(_dump({"machine": MACHINE_VERSION, "result": out.kind.value, "output": out.output,
                            "steps": out.steps,
                            "print_times": {str(k): v for k, v in sorted(out.print_times.items())}}))
    return EXIT_OK


def cmd_encode(args) -> int:
    for s in args.strings:
        check_bits(s)
    if args.what == "pair":
        if len(args.strings) != 2:
            raise ConfigError("encode pair takes exactly two bit strings")
        print(encode_pair(*args.strings))
    else:
        print(encode_set(args.strings))
    return EXIT_OK


def cmd_cache(args) -> int:
    cache = ComplexityCache(args.cache_dir)
    if args.action == "stats":
        sys.stdout.write(_dump({"machine": MACHINE_VERSION, "directory": str(cache.directory),
                                "entries": cache.stats()}))
        return EXIT_OK
    if args.action == "clear":
        removed = cache.clear()
        print(f"removed {removed} record(s) for other machine versions")
        return EXIT_OK
    problems = cache.verify()
    for p in problems:
        print(p)
    print(f"{len(problems)} mismatch(es)")
    return EXIT_VERIFY if problems else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="islab", description="Algorithmic information of interacting players.")
    ap.add_argument("--workers", type=int, default=os.cpu_count() or 1,
                    help="parallel workers for searches and family scans (default: all CPUs)")
    ap.add_argument("--cache-dir", default=None, help="complexity cache directory (default: $ISLAB_CACHE_DIR)")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run an experiment config")
    p.add_argument("config")
    p.add_argument("--no-cache", action="store_true", help="do not read or write the complexity cache")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("machine", help="reference machine tools")
    msub = p.add_subparsers(dest="machine_command", required=True)
    r = msub.add_parser("run", help="execute one program")
    r.add_argument("--program", required=True)
    r.add_argument("--aux", default="")
    r.add_argument("--max-steps", type=int, default=10_000)
    r.set_defaults(func=cmd_machine)

    p = sub.add_parser("encode", help="prefix-free encodings")
    p.add_argument("what", choices=["pair", "set"])
    p.add_argument("strings", nargs="*")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("cache", help="inspect or maintain the complexity cache")
    p.add_argument("action", choices=["stats", "verify", "clear"])
    p.set_defaults(func=cmd_cache)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.workers < 1:
        ap.error("--workers must be >= 1")
    if args.cache_dir is None:
        args.cache_dir = default_cache_dir()
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"islab: schema error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except (MissingInput, FileNotFoundError) as exc:
        print(f"islab: missing input: {exc}", file=sys.stderr)
        return EXIT_MISSING
    except ScaleLimitError as exc:
        print(f"islab: scale limit: {exc}", file=sys.stderr)
        return EXIT_SCALE
    except IdentityViolation as exc:
        print(f"islab: verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except ValueError as exc:
        print(f"islab: invalid input: {exc}", file=sys.stderr)
        return EXIT_SCHEMA


if __name__ == "__main__":
    sys.exit(main())
