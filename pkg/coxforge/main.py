#!/usr/bin/env python
"""
Main module for coxforge.

Parses the command line, reads the input document, runs one analysis and
writes its JSON report to stdout (or --out). Diagnostics go to stderr and
map onto the exit codes: 0 success, 1 input error, 2 budget exhausted,
3 internal invariant failure.
"""
import re
import sys
import logging
import argparse
from pathlib import Path
from typing import Iterable, List, Optional, Tuple

from .config import BALL_BUDGET, DEFAULT_ALPHABET, DEFAULT_MAX_LENGTH, DEFAULT_WORKERS, configure_logging
from .core.classify import classify
from .core.coxeter import INF, CoxeterMatrix, label_text
from .core.representation import enumerate_ball, generators, relation_order, verify_reduced_faithful
from .core.search import Predicate, SearchSpec, hunt
from .core.tits_form import gram, kernel, signature
from .dsl import parse, read_source
from .report import emit_classification, emit_faithfulness, emit_hit, emit_repr, emit_signature
from .utils import BudgetExceeded, CoxforgeException, InputError, InvariantError

logger = logging.getLogger(__file__)

EXIT_OK, EXIT_INPUT, EXIT_BUDGET, EXIT_INVARIANT = 0, 1, 2, 3
# Relation orders are checked for finite labels up to this bound.
RELATION_ORDER_CAP = 8
# Flag integers: ASCII digits only, short enough to convert.
FLAG_INTEGER = re.compile(r"[0-9]{1,9}")


class ArgumentParser(argparse.ArgumentParser):
    """argparse that raises InputError instead of exiting with status 2."""

    def error(self, message):
        """Raises InputError with argparse's message."""
        raise InputError(message)


# == Flag parsers == #
def parse_alphabet(text: str) -> Tuple:
    """Parses a comma separated label list such as '2,3,inf'."""
    labels = []
    for item in text.split(","):
        item = item.strip()
        if item == "inf":
            labels.append(INF)
        elif FLAG_INTEGER.fullmatch(item) and int(item) >= 2:
            labels.append(int(item))
        else:
            raise InputError(f"Invalid alphabet label {item!r}; use integers >= 2 or 'inf'.")
    return tuple(labels)


def parse_vertices(text: str) -> Tuple[int, int]:
    """Parses a vertex count '4' or an inclusive range '3-5'."""
    low, _, high = text.partition("-")
    if not FLAG_INTEGER.fullmatch(low) or (high and not FLAG_INTEGER.fullmatch(high)):
        raise InputError(f"Invalid vertex range {text!r}; use e.g. '4' or '3-5'.")
    return int(low), int(high or low)


def build_parser() -> ArgumentParser:
    """Builds the command line parser with one subcommand per analysis."""
    parser = ArgumentParser(prog="coxforge", description="Exact analysis of Coxeter groups through their Tits form.")
    commands = parser.add_subparsers(dest="command", metavar="command", parser_class=ArgumentParser)
    commands.required = True

    def add_command(name: str, help_text: str) -> ArgumentParser:
        """Adds a subcommand that reads one input document."""
        sub = commands.add_parser(name, help=help_text)
        sub.add_argument("input", nargs="?", default="-", help="input document (default: stdin)")
        sub.add_argument("--out", help="write the report to this file instead of stdout")
        return sub

    add_command("classify", "classify components and report the group-level verdicts")
    add_command("signature", "signature of the Tits form and a basis of its kernel")
    for name, help_text in (("repr", "generator matrices and ball statistics"),
                            ("verify-faithful", "check a word ball against the kernel of the reduced representation")):
        sub = add_command(name, help_text)
        sub.add_argument("--max-length", type=int, default=DEFAULT_MAX_LENGTH, help="ball radius L")
        sub.add_argument("--budget", type=int, default=BALL_BUDGET, help="maximum number of ball elements")

    search = commands.add_parser("search", help="enumerate connected diagrams and filter them")
    search.add_argument("--vertices", required=True, help="vertex count or range, e.g. 4 or 3-5")
    search.add_argument("--alphabet", default=",".join(label_text(m) for m in DEFAULT_ALPHABET), help="comma separated labels")
    search.add_argument("--where", default="", help="predicate, e.g. 'p<=2 and kind==NonAffine'")
    search.add_argument("--limit", type=int, default=None, help="stop after this many hits")
    search.add_argument("--workers", type=int, default=DEFAULT_WORKERS, help="parallel worker processes")
    search.add_argument("--out", help="write the hits to this file instead of stdout")
    return parser


# == Subcommands == #
def _load(args) -> CoxeterMatrix:
    """Reads and parses the input document named on the command line."""
    return parse(read_source(args.input))


def run_classify(args) -> Iterable[str]:
    """Classification report of the whole group."""
    yield emit_classification(classify(_load(args)))


def run_signature(args) -> Iterable[str]:
    """Signature and kernel of the Tits form."""
    matrix = _load(args)
    form = gram(matrix)
    yield emit_signature(matrix, form.ctx, signature(form), kernel(form))


def run_repr(args) -> Iterable[str]:
    """Generator matrices, relation orders and ball statistics."""
    matrix = _load(args)
    form = gram(matrix)
    ball = enumerate_ball(form, args.max_length, args.budget)
    orders = [
        {
            "pair": [matrix.names[s], matrix.names[t]],
            "label": label_text(m),
            "order": relation_order(s, t, form, cap=RELATION_ORDER_CAP),
        }
        for s, t, m in matrix.edges()
        if m != INF and m <= RELATION_ORDER_CAP
    ]
    yield emit_repr(matrix, form.ctx, [g.matrix for g in generators(form)], ball, orders)


def run_verify_faithful(args) -> Iterable[str]:
    """Violations of faithfulness of the reduced representation on a ball."""
    matrix = _load(args)
    form = gram(matrix)
    yield emit_faithfulness(matrix, verify_reduced_faithful(form, kernel(form), args.max_length, args.budget))


def run_search(args) -> Iterable[str]:
    """One JSON line per diagram matching the search flags."""
    if args.limit is not None and args.limit < 1:
        raise InputError(f"--limit must be positive, got {args.limit}.")
    spec = SearchSpec(
        vertices=parse_vertices(args.vertices),
        alphabet=parse_alphabet(args.alphabet),
        predicate=Predicate.parse(args.where),
        limit=args.limit,
        workers=args.workers,
    )
    result = hunt(spec)
    logger.info(f"Search examined {result.examined} diagrams, {len(result.hits)} hits.")
    if result.truncated:
        print(f"Warning: stopped after {spec.limit} hits; results are incomplete.", file=sys.stderr)
    for hit in result.hits:
        yield emit_hit(hit)


COMMANDS = {
    "classify": run_classify,
    "signature": run_signature,
    "repr": run_repr,
    "verify-faithful": run_verify_faithful,
    "search": run_search,
}


def write_output(lines: List[str], out: Optional[str]) -> None:
    """Writes the report lines to the --out file, or to stdout."""
    text = "".join(line + "\n" for line in lines)
    if out:
        try:
            Path(out).write_text(text, encoding="utf-8")
        except OSError as e:
            raise InputError(f"Cannot write {out}: {e}")
    else:
        sys.stdout.write(text)


def run(argv: Optional[List[str]] = None) -> int:
    """Runs one invocation and returns its exit code."""
    try:
        args = build_parser().parse_args(argv)
        logger.debug(f"Running {args.command} with {vars(args)}.")
        write_output(list(COMMANDS[args.command](args)), args.out)
        return EXIT_OK
    except InputError as e:
        logger.warning(f"Input error: {e}")
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as e:
        logger.warning(f"Budget exceeded: {e}")
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except InvariantError as e:
        logger.error(f"Invariant failure: {e}")
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_INVARIANT
    except CoxforgeException as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except KeyboardInterrupt:
        logger.debug("Interrupted.")
        print("\nInterrupted.", file=sys.stderr)
        return EXIT_INPUT
    except Exception as e:
        logger.exception(f"An unexpected error occurred: {e}")
        print(f"Error: an unexpected error occurred: {e}", file=sys.stderr)
        return EXIT_INVARIANT


def main() -> None:
    """Configures logging and exits with the code of the invocation."""
    configure_logging()
    sys.exit(run())


if __name__ == "__main__":
    main()
