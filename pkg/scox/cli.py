"""scox: singular Coxeter monoid toolkit.

Systems are given as a named type (--type A3, --type "A2xA1", --type "I2(5)")
or a matrix file (--matrix m.json, JSON or TOML, {"matrix": [[...]], "labels": [...]}).
Subsets and words use generator labels: "s1s3", "s1,s3" or, for rank <= 3, "st".

Exit status: 0 on success, 1 on invalid input or usage, 2 when a search bound
(SCOX_MAX_VERTICES, SCOX_ENUMERATION_BOUND) is exceeded.

examples:
  scox switchback --type E8 --a 3 --b 8
  scox rex enumerate --type A2 --left "" --right "" --word sts
  scox reduce --type A2 --expr "[∅,s,∅,s,∅]"
  scox complex --type A2 --left s --format dot
  scox webs evaluate "(1,2,1) ; merge@1(1,2) ; split@1(2,1)"
"""

import argparse
import json
import logging
import sys

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from pathlib import Path
from typing import Callable, List, Optional, Sequence

from scox import __version__
from scox.config import settings
from scox.core.system import CoxeterSystem, classify_components, new_system
from scox.exceptions import ScoxException, UsageError, ValidationError
from scox.logging_config import setup_logging
from scox.schemas.systems import CosetModel
from scox.services.complex_export import EXPORT_FORMATS, export
from scox.services.complexes import build_complex, embed_check, halfspace_check
from scox.services.constructions import high_road, low_road, some_rex
from scox.services.cosets import coset_of, karoubi_check
from scox.services.expressions import Expression
from scox.services.relations import relation_calculus
from scox.services.rewrite import matsumoto_verify, normalize, rex_graph, rex_set
from scox.services.switchback_tables import regenerate_table, switchback_letters
from scox.services import webs
from scox.utils import notation

logger = logging.getLogger(__name__)

FORMATS = ("text", "json", "dot")


class _Parser(argparse.ArgumentParser):
    """Usage errors exit with status 1; status 2 is kept for search bounds."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


# ============================================================================
# SHARED ARGUMENTS
# ============================================================================

def _common_parent() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--format", choices=FORMATS, default="text", help="Output format")
    parent.add_argument("--threads", type=int, default=None, help="Worker threads (default SCOX_THREADS)")
    parent.add_argument(
        "--log-level",
        default="WARNING",
        choices=("DEBUG", "INFO", "WARNING", "ERROR"),
        help="Log level for stderr",
    )
    return parent


def _add_system_args(parser: argparse.ArgumentParser, required: bool = True) -> None:
    group = parser.add_mutually_exclusive_group(required=required)
    group.add_argument("--type", dest="type_name", help="Named type, e.g. A3, E8, I2(5), A2xA1")
    group.add_argument("--matrix", type=Path, help="Coxeter matrix file (JSON or TOML)")


def _add_coset_args(parser: argparse.ArgumentParser) -> None:
    _add_system_args(parser)
    parser.add_argument("--left", default="", help="Left subset J")
    parser.add_argument("--right", default="", help="Right subset I")
    parser.add_argument("--word", default="", help="Any element of the coset")


def _load_matrix(path: Path) -> dict:
    try:
        raw = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ValidationError(f"cannot read matrix file {path}: {e}", field="matrix")
    try:
        data = tomllib.loads(raw) if path.suffix == ".toml" else json.loads(raw)
    except (json.JSONDecodeError, tomllib.TOMLDecodeError) as e:
        raise ValidationError(f"malformed matrix file {path}: {e}", field="matrix")
    if isinstance(data, list):
        data = {"matrix": data}
    if not isinstance(data, dict) or "matrix" not in data:
        raise ValidationError("matrix file needs a `matrix` entry", field="matrix")
    return {"matrix": data["matrix"], "labels": data.get("labels")}


def _system(args: argparse.Namespace) -> CoxeterSystem:
    if args.type_name is not None:
        return new_system(args.type_name)
    return new_system(_load_matrix(args.matrix))


def _coset(args: argparse.Namespace):
    system = _system(args)
    left = notation.parse_subset(system, args.left)
    right = notation.parse_subset(system, args.right)
    w = system.from_word(notation.parse_word(system, args.word))
    return coset_of(system, left, w, right)


def _require_format(args: argparse.Namespace, allowed: Sequence[str]) -> None:
    if args.format not in allowed:
        raise UsageError(f"--format {args.format} is not available for `{args.command}`")


def _emit_json(payload) -> None:
    print(json.dumps(payload, indent=2, ensure_ascii=False))


def _emit_report(args: argparse.Namespace, title: str, report) -> int:
    _require_format(args, ("text", "json"))
    if args.format == "json":
        _emit_json(report.to_dict())
    else:
        print(f"{title}: {'ok' if report.ok else 'FAILED'}")
        for key, value in report.to_dict().items():
            if key not in ("ok", "failures", "entries"):
                print(f"  {key}: {value}")
        for failure in report.failures:
            print(f"  failure: {failure}")
    return 0 if report.ok else 1


# ============================================================================
# COMMANDS
# ============================================================================

def _classify_command(args: argparse.Namespace) -> int:
    _require_format(args, ("text", "json"))
    system = _system(args)
    if args.format == "json":
        _emit_json({
            "name": system.name,
            "rank": system.rank,
            "generators": list(system.labels),
            "finite": system.is_finite,
            "components": [
                {"generators": [system.label(g) for g in comp], "type": name}
                for comp, name in classify_components(system)
            ],
        })
        return 0
    print(system.name)
    if len(system.components) > 1:
        for comp, name in classify_components(system):
            print(f"  {','.join(system.label(g) for g in comp)}: {name}")
    return 0


def _add_classify_args(parser: argparse.ArgumentParser) -> None:
    _add_system_args(parser)
    parser.set_defaults(func=_classify_command)


def _coset_command(args: argparse.Namespace) -> int:
    _require_format(args, ("text", "json"))
    p = _coset(args)
    model = CosetModel.from_coset(p)
    if args.format == "json":
        _emit_json(model.model_dump())
        return 0
    system = p.system
    print(f"coset: {p!r}")
    print(f"min: {notation.format_word(system, p.min.word())}")
    print(f"max: {notation.format_word(system, p.max.word())}")
    print(f"left redundancy: {notation.format_subset(system, p.left_redundancy)}")
    print(f"right redundancy: {notation.format_subset(system, p.right_redundancy)}")
    print(f"core: {p.core()!r}")
    print(f"lengths: plus={model.length_plus} minus={model.length_minus} total={model.length}")
    return 0


def _add_coset_command_args(parser: argparse.ArgumentParser) -> None:
    _add_coset_args(parser)
    parser.set_defaults(func=_coset_command)


def _rex_command(args: argparse.Namespace) -> int:
    p = _coset(args)
    if args.mode == "enumerate":
        if args.format == "dot":
            print(rex_graph(p).to_dot(), end="")
            return 0
        found = list(rex_set(p, max_width=args.max_width))
    else:
        _require_format(args, ("text", "json"))
        found = [{"some": some_rex, "high": high_road, "low": low_road}[args.mode](p)]
    if args.format == "json":
        _emit_json({"coset": repr(p), "count": len(found), "expressions": [str(e) for e in found]})
    else:
        for e in found:
            print(e)
    return 0


def _add_rex_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("mode", choices=("some", "high", "low", "enumerate"), help="Which expressions")
    _add_coset_args(parser)
    parser.add_argument("--max-width", type=int, default=None, help="Width cap for enumerate")
    parser.set_defaults(func=_rex_command)


def _reduce_command(args: argparse.Namespace) -> int:
    _require_format(args, ("text", "json"))
    system = _system(args)
    trace = normalize(Expression.parse(system, args.expr))
    if args.format == "json":
        _emit_json(trace.to_dict())
        return 0
    print(f"start: {trace.start}")
    for line in trace.to_lines():
        print(line)
    print(f"reduced: {trace.final}")
    return 0


def _add_reduce_args(parser: argparse.ArgumentParser) -> None:
    _add_system_args(parser)
    parser.add_argument("--expr", required=True, help='Expression, e.g. "[∅,s,∅,s,∅]" or "[st] -s +u"')
    parser.set_defaults(func=_reduce_command)


def _switchback_command(args: argparse.Namespace) -> int:
    _require_format(args, ("text", "json"))
    system = _system(args)
    letters = switchback_letters(system, args.a, args.b)
    if args.format == "json":
        s, t = args.a - 1, args.b - 1
        relation = relation_calculus.switchback(system, system.all_generators - {s}, s, t)
        _emit_json({
            "a": args.a,
            "b": args.b,
            "c": list(letters),
            "lhs": str(relation.lhs),
            "rhs": str(relation.rhs),
        })
        return 0
    print("c = " + ",".join(str(x) for x in letters))
    return 0


def _add_switchback_args(parser: argparse.ArgumentParser) -> None:
    _add_system_args(parser)
    parser.add_argument("--a", type=int, required=True, help="s = s_a and J = S minus s_a")
    parser.add_argument("--b", type=int, required=True, help="t = s_b")
    parser.set_defaults(func=_switchback_command)


def _table_command(args: argparse.Namespace) -> int:
    _require_format(args, ("text", "json"))
    table = regenerate_table(args.type_name, include_flips=args.flips)
    if args.format == "json":
        print(table.to_json())
    else:
        print(table.to_text(), end="")
    return 0


def _add_table_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--type", dest="type_name", required=True, help="Finite irreducible type")
    parser.add_argument("--flips", action="store_true", help="Also list ordered pairs with a > b")
    parser.set_defaults(func=_table_command)


def _matsumoto_command(args: argparse.Namespace) -> int:
    _require_format(args, ("text", "json"))
    system = _system(args)
    report = matsumoto_verify(system, max_subset_size=args.max_subset_size, threads=args.threads)
    if args.format == "json":
        _emit_json(report.to_dict())
        return 0 if report.ok else 1
    print(f"{report.system_name}: {len(report.entries)} coset(s), {len(report.failures)} disconnected")
    for entry in report.failures:
        print(f"  disconnected: ({','.join(entry.left)};{','.join(entry.right)}) min={entry.min_word}")
    return 0 if report.ok else 1


def _add_matsumoto_args(parser: argparse.ArgumentParser) -> None:
    _add_system_args(parser)
    parser.add_argument("--verify", action="store_true", required=True, help="Check every rex graph is connected")
    parser.add_argument("--max-subset-size", type=int, default=None, help="Limit |J|, |I|")
    parser.set_defaults(func=_matsumoto_command)


def _complex_command(args: argparse.Namespace) -> int:
    _require_format(args, EXPORT_FORMATS)
    system = _system(args)
    graph = build_complex(system, notation.parse_subset(system, args.left))
    print(export(graph, args.format), end="")
    return 0


def _add_complex_args(parser: argparse.ArgumentParser) -> None:
    _add_system_args(parser)
    parser.add_argument("--left", default="", help="Base subset J")
    parser.set_defaults(func=_complex_command, format="dot")


def _karoubi_command(args: argparse.Namespace) -> int:
    system = _system(args)
    return _emit_report(args, f"karoubi {system.name}", karoubi_check(system))


def _add_karoubi_args(parser: argparse.ArgumentParser) -> None:
    _add_system_args(parser)
    parser.set_defaults(func=_karoubi_command)


def _halfspace_command(args: argparse.Namespace) -> int:
    system = _system(args)
    return _emit_report(args, f"halfspace {system.name}", halfspace_check(system))


def _add_halfspace_args(parser: argparse.ArgumentParser) -> None:
    _add_system_args(parser)
    parser.set_defaults(func=_halfspace_command)


def _embed_command(args: argparse.Namespace) -> int:
    system = _system(args)
    left = notation.parse_subset(system, args.left)
    return _emit_report(args, f"embed {system.name}", embed_check(system, left))


def _add_embed_args(parser: argparse.ArgumentParser) -> None:
    _add_system_args(parser)
    parser.add_argument("--left", default="", help="Base subset J")
    parser.set_defaults(func=_embed_command)


# ---------------------------------------------------------------------------
# webs
# ---------------------------------------------------------------------------

def _parse_object_arg(text: str) -> webs.ObjectSeq:
    text = text.strip()
    return webs.parse_object(text if text.startswith("(") else f"({text})")


def _webs_evaluate_command(args: argparse.Namespace) -> int:
    _require_format(args, ("text", "json"))
    web = webs.parse_web(args.web)
    p = webs.evaluate_web(web)
    expression = webs.expression_from_web(web)
    if args.format == "json":
        _emit_json({
            "web": webs.format_web(web),
            "top": list(web.top),
            "degree": web.degree,
            "expression": str(expression),
            "coset": CosetModel.from_coset(p).model_dump(),
        })
        return 0
    print(f"web: {webs.format_web(web)}")
    print(f"top: {webs.format_object(web.top)}")
    print(f"degree: {web.degree}")
    print(f"expression: {expression}")
    print(f"coset: {p!r}")
    return 0


def _webs_relate_command(args: argparse.Namespace) -> int:
    _require_format(args, ("text",))
    web = webs.parse_web(args.web)
    if args.at < 1:
        raise ValidationError("--at is 1-based", field="at")
    print(webs.format_web(webs.apply_web_relation(web, args.relation, args.at - 1)))
    return 0


def _webs_hom_count_command(args: argparse.Namespace) -> int:
    _require_format(args, ("text", "json"))
    bottom, top = _parse_object_arg(args.bottom), _parse_object_arg(args.top)
    count = webs.hom_count(bottom, top)
    if args.format == "json":
        _emit_json({"bottom": list(bottom), "top": list(top), "count": count})
    else:
        print(count)
    return 0


def _webs_classes_command(args: argparse.Namespace) -> int:
    _require_format(args, ("text", "json"))
    bottom, top = _parse_object_arg(args.bottom), _parse_object_arg(args.top)
    result = webs.relation_classes(bottom, top, args.max_degree)
    if args.format == "json":
        _emit_json({**result.to_dict(), "hom_count": webs.hom_count(bottom, top)})
    else:
        print(f"webs: {result.webs}")
        print(f"classes: {result.classes}")
        print(f"hom count: {webs.hom_count(bottom, top)}")
    return 0


def _add_webs_args(parser: argparse.ArgumentParser, parent: argparse.ArgumentParser) -> None:
    actions = parser.add_subparsers(dest="webs_command", required=True)

    evaluate = actions.add_parser("evaluate", parents=[parent], help="Evaluate a web in S_N")
    evaluate.add_argument("web", help='Web text, e.g. "(1,1) ; merge@1(1,1)"')
    evaluate.set_defaults(func=_webs_evaluate_command)

    relate = actions.add_parser("relate", parents=[parent], help="Apply one web relation")
    relate.add_argument("web", help="Web text")
    relate.add_argument("--relation", required=True, choices=sorted(webs.WEB_RELATIONS))
    relate.add_argument("--at", type=int, required=True, help="1-based layer where the pattern starts")
    relate.set_defaults(func=_webs_relate_command)

    hom = actions.add_parser("hom-count", parents=[parent], help="Count double cosets S_top\\S_N/S_bottom")
    hom.add_argument("--bottom", required=True, help="Object, e.g. 1,1")
    hom.add_argument("--top", required=True, help="Object, e.g. 2")
    hom.set_defaults(func=_webs_hom_count_command)

    classes = actions.add_parser("classes", parents=[parent], help="Relation classes of bounded-degree webs")
    classes.add_argument("--bottom", required=True)
    classes.add_argument("--top", required=True)
    classes.add_argument("--max-degree", type=int, default=None)
    classes.set_defaults(func=_webs_classes_command)


# ============================================================================
# ENTRY POINT
# ============================================================================

_COMMANDS: List[tuple] = [
    ("classify", "Classify a Coxeter system", _add_classify_args),
    ("coset", "Describe the (J,I)-coset of a word", _add_coset_command_args),
    ("rex", "Reduced expressions of a coset", _add_rex_args),
    ("reduce", "Rewrite an expression to a reduced one", _add_reduce_args),
    ("switchback", "Switchback letters for J = S minus s_a", _add_switchback_args),
    ("table", "Switchback table of a finite type", _add_table_args),
    ("matsumoto", "Check rex graphs are connected", _add_matsumoto_args),
    ("complex", "Export the complex Cox_J", _add_complex_args),
    ("karoubi", "Check the Karoubi envelope description", _add_karoubi_args),
    ("halfspace", "Check the half-space reducedness criterion", _add_halfspace_args),
    ("embed", "Check the embedding Cox_J into Cox_0", _add_embed_args),
]


def build_parser() -> argparse.ArgumentParser:
    parent = _common_parent()
    parser = _Parser(
        prog="scox",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"scox {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name, help_text, add_args in _COMMANDS:
        add_args(subparsers.add_parser(name, parents=[parent], help=help_text))
    _add_webs_args(subparsers.add_parser("webs", help="Type A webs"), parent)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(log_level=args.log_level, environment=settings.ENVIRONMENT, log_file=settings.LOG_FILE)
    func: Callable[[argparse.Namespace], int] = args.func
    try:
        return int(func(args))
    except ScoxException as exc:
        logger.debug(f"❌ [CLI] {exc.error_code}: {exc.details}")
        print(f"scox: {exc.error_code}: {exc.message}", file=sys.stderr)
        return exc.exit_code


def main(argv: Optional[Sequence[str]] = None) -> int:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
