"""Command-line front end: automaton file parsing, classification reports,
exports, and the brute-force cross-check.

Automaton file format, one machine per file ('#' starts a comment line):

    alphabet: ab
    states: 4
    start: 0
    accepting: 1 3
    0 a 1
    0 b 0
    ...

followed by exactly one transition line per (state, letter) pair.

Exit codes: 0 success, 1 input error, 2 word-cap exceeded.  The word cap
used by oracle checks defaults to one million and can be overridden with
the SUBSEQ_WORD_CAP environment variable.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass
from pathlib import Path

from .alternation import (
    ENGINE_CHAIN_NFA,
    ENGINE_ITERATE,
    AlternationMeasure,
    m_minus,
    m_plus,
    mk_witness,
)
from .automata import Alphabet, Dfa, complement, is_empty, minimize
from .errors import (
    InputError,
    ParseError,
    ToolkitError,
    WordCapExceededError,
)
from .oracle import DEFAULT_WORD_CAP, cross_check
from .patterns import PatternWitness, detect_p1, detect_p2, detect_p3
from .subword import (
    decompose_level_half,
    is_co_level_one_half,
    is_level_one_half,
    upward_closure,
)

__all__ = [
    "parse_dfa",
    "export",
    "ClassificationReport",
    "classify",
    "main",
]

_TOKEN = re.compile(r"\S+")


def _tokens(content: str) -> list[tuple[str, int]]:
    """Whitespace-separated tokens with their 1-based column offsets."""
    return [(m.group(), m.start() + 1) for m in _TOKEN.finditer(content)]


def _int_token(token: str, what: str, line: int, column: int | None = None) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {token!r}", line, column) from None


def parse_dfa(text: str) -> Dfa:
    """Parse the native automaton format into a validated complete Dfa."""
    lines = [
        (i + 1, stripped)
        for i, raw in enumerate(text.splitlines())
        if (stripped := raw.strip()) and not stripped.startswith("#")
    ]

    def header(idx: int, key: str) -> tuple[int, str]:
        if idx >= len(lines):
            raise ParseError(f"missing {key!r} line")
        lineno, content = lines[idx]
        if not content.startswith(key + ":"):
            raise ParseError(f"expected a {key!r} line, got {content!r}", lineno)
        return lineno, content[len(key) + 1 :].strip()

    lineno, letters = header(0, "alphabet")
    if not letters:
        raise ParseError("alphabet line is empty", lineno)
    try:
        alphabet = Alphabet(letters)
    except InputError as exc:
        raise ParseError(str(exc), lineno) from None

    lineno, body = header(1, "states")
    n_states = _int_token(body, "state count", lineno)
    if n_states < 1:
        raise ParseError("state count must be positive", lineno)

    lineno, body = header(2, "start")
    start = _int_token(body, "start state", lineno)
    if not 0 <= start < n_states:
        raise ParseError(f"start state {start} out of range", lineno)

    lineno, body = header(3, "accepting")
    accepting = set()
    for token, column in _tokens(body):
        state = _int_token(token, "accepting state", lineno, column)
        if not 0 <= state < n_states:
            raise ParseError(f"accepting state {state} out of range", lineno, column)
        accepting.add(state)

    width = len(alphabet)
    table: dict[tuple[int, int], int] = {}
    for lineno, content in lines[4:]:
        tokens = _tokens(content)
        if len(tokens) != 3:
            raise ParseError("expected '<state> <letter> <state>'", lineno)
        (src_tok, src_col), (letter, letter_col), (dst_tok, dst_col) = tokens
        src = _int_token(src_tok, "source state", lineno, src_col)
        if not 0 <= src < n_states:
            raise ParseError(f"unknown state {src}", lineno, src_col)
        if letter not in alphabet:
            raise ParseError(f"unknown letter {letter!r}", lineno, letter_col)
        dst = _int_token(dst_tok, "target state", lineno, dst_col)
        if not 0 <= dst < n_states:
            raise ParseError(f"unknown state {dst}", lineno, dst_col)
        key = (src, alphabet.index(letter))
        if key in table:
            raise ParseError(f"duplicate transition for state {src} on {letter!r}", lineno)
        table[key] = dst

    for s in range(n_states):
        for j, ch in enumerate(alphabet.letters):
            if (s, j) not in table:
                raise ParseError(f"missing transition for state {s} on {ch!r}")
    delta = tuple(tuple(table[(s, j)] for j in range(width)) for s in range(n_states))
    return Dfa(alphabet, n_states, delta, start, frozenset(accepting))


def export(dfa: Dfa, fmt: str = "native") -> str:
    """Render an automaton as text.

    ``native`` round-trips through parse_dfa bit for bit; ``dot`` is a
    Graphviz digraph with accepting states double-circled and one labelled
    edge per (state, letter) pair.
    """
    if fmt == "native":
        lines = [
            "alphabet: " + "".join(dfa.alphabet.letters),
            f"states: {dfa.n_states}",
            f"start: {dfa.start}",
            "accepting:" + "".join(f" {s}" for s in sorted(dfa.accepting)),
        ]
        for s in range(dfa.n_states):
            for j, ch in enumerate(dfa.alphabet.letters):
                lines.append(f"{s} {ch} {dfa.delta[s][j]}")
        return "\n".join(lines) + "\n"
    if fmt == "dot":
        lines = ["digraph dfa {", "  rankdir=LR;", '  __start [shape=none, label=""];']
        for s in range(dfa.n_states):
            shape = "doublecircle" if s in dfa.accepting else "circle"
            lines.append(f"  {s} [shape={shape}];")
        lines.append(f"  __start -> {dfa.start};")
        for s in range(dfa.n_states):
            for j, ch in enumerate(dfa.alphabet.letters):
                lines.append(f'  {s} -> {dfa.delta[s][j]} [label="{ch}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"
    raise InputError(f"unknown export format {fmt!r}")


@dataclass(frozen=True)
class ClassificationReport:
    """Full verdict for one language."""

    language: str
    in_level_one_half: bool
    in_co_level_one_half: bool
    ideal_decomposition: tuple[str, ...] | None
    m_plus: AlternationMeasure
    m_minus: AlternationMeasure
    minimal_k_plus: int | None
    minimal_k_co: int | None
    piecewise_testable: bool
    pattern_witness: PatternWitness | None

    def to_dict(self) -> dict:
        witness = None
        if self.pattern_witness is not None:
            w = self.pattern_witness
            witness = {
                "kind": w.kind,
                "letter": w.letter,
                "x": w.x,
                "v": w.v,
                "y": w.y,
                "z": w.z,
                "u": w.u,
                "z_prime": w.z_prime,
                "states": list(w.states),
            }
        return {
            "language": self.language,
            "in_level_one_half": self.in_level_one_half,
            "in_co_level_one_half": self.in_co_level_one_half,
            "ideal_decomposition": (
                list(self.ideal_decomposition)
                if self.ideal_decomposition is not None
                else None
            ),
            "m_plus": self.m_plus.json_value(),
            "m_minus": self.m_minus.json_value(),
            "minimal_k_plus": self.minimal_k_plus,
            "minimal_k_co": self.minimal_k_co,
            "piecewise_testable": self.piecewise_testable,
            "pattern_witness": witness,
        }


def _check_report(report: ClassificationReport, dfa: Dfa) -> None:
    """Internal consistency constraints, asserted on every classification.

    They tie independent code paths together: the upward-closure tests
    must agree with the measures at level one, and witness presence must
    agree with finiteness.
    """
    plus, minus = report.m_plus, report.m_minus
    one = AlternationMeasure.finite(1)
    ok = (
        report.piecewise_testable == plus.is_finite
        and plus.is_finite == minus.is_finite
        and report.in_level_one_half == (plus < one)
        and report.in_co_level_one_half == (minus < one)
        and (report.pattern_witness is None) == plus.is_finite
        and report.minimal_k_plus == (plus.value + 1 if plus.is_finite else None)
        and report.minimal_k_co == (minus.value + 1 if minus.is_finite else None)
    )
    if ok and plus.is_finite:
        degenerate = is_empty(dfa) or is_empty(complement(dfa))
        if not degenerate:
            ok = abs(plus.value - minus.value) == 1
    if not ok:
        raise AssertionError(
            f"inconsistent classification for {report.language!r}: {report.to_dict()}"
        )


def classify(dfa: Dfa, name: str = "language", engine: str = ENGINE_ITERATE) -> ClassificationReport:
    """Run every classification the toolkit offers on one automaton."""
    in_half = is_level_one_half(dfa)
    in_co_half = is_co_level_one_half(dfa)
    decomposition = decompose_level_half(dfa).words if in_half else None
    witness = detect_p3(dfa)
    plus = m_plus(dfa, engine)
    minus = m_minus(dfa, engine)
    report = ClassificationReport(
        language=name,
        in_level_one_half=in_half,
        in_co_level_one_half=in_co_half,
        ideal_decomposition=decomposition,
        m_plus=plus,
        m_minus=minus,
        minimal_k_plus=plus.value + 1 if plus.is_finite else None,
        minimal_k_co=minus.value + 1 if minus.is_finite else None,
        piecewise_testable=witness is None,
        pattern_witness=witness,
    )
    _check_report(report, dfa)
    return report


def _word(w: str) -> str:
    return w if w else "ε"


def _yesno(flag: bool) -> str:
    return "yes" if flag else "no"


def _render_witness(w: PatternWitness) -> str:
    parts = [f"kind={w.kind}", f"letter={w.letter}"]
    for name in ("x", "v", "y", "z", "u", "z_prime"):
        parts.append(f"{name}={_word(getattr(w, name))}")
    parts.append("states=" + ",".join(str(s) for s in w.states))
    return " ".join(parts)


def _render_report(report: ClassificationReport, show_witness: bool) -> str:
    lines = [f"language: {report.language}"]
    lines.append(f"level 1/2 (union of shuffle ideals): {_yesno(report.in_level_one_half)}")
    if report.ideal_decomposition is not None:
        ideals = " ".join(_word(w) for w in report.ideal_decomposition)
        lines.append(f"  shuffle ideals: {ideals if ideals else '(empty union)'}")
    lines.append(f"co level 1/2: {_yesno(report.in_co_level_one_half)}")
    lines.append(f"m_plus: {report.m_plus}")
    lines.append(f"m_minus: {report.m_minus}")
    if report.minimal_k_plus is not None:
        lines.append(f"minimal k, plus side: {report.minimal_k_plus}")
        lines.append(f"minimal k, co side: {report.minimal_k_co}")
    else:
        lines.append("outside the boolean closure of level 1/2")
    lines.append(f"piecewise testable (level 1): {_yesno(report.piecewise_testable)}")
    if show_witness and report.pattern_witness is not None:
        lines.append("pattern witness: " + _render_witness(report.pattern_witness))
    return "\n".join(lines) + "\n"


def _json_dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _read_dfa(path: str) -> Dfa:
    return parse_dfa(Path(path).read_text(encoding="utf-8"))


def _word_cap() -> int:
    raw = os.environ.get("SUBSEQ_WORD_CAP")
    if raw is None:
        return DEFAULT_WORD_CAP
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"SUBSEQ_WORD_CAP must be an integer, got {raw!r}") from None


def _write_output(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _cmd_classify(args) -> int:
    if args.batch:
        paths = sorted(Path(args.batch).glob("*.dfa"))
        if not paths:
            raise InputError(f"no .dfa files in {args.batch!r}")
    else:
        if args.file is None:
            raise InputError("classify needs a FILE or --batch DIR")
        paths = [Path(args.file)]

    dicts = []
    texts = []
    for path in paths:
        dfa = parse_dfa(path.read_text(encoding="utf-8"))
        report = classify(dfa, name=path.stem, engine=args.engine)
        entry = report.to_dict()
        if args.oracle_check is not None:
            problems = cross_check(
                dfa, args.oracle_check, cap=_word_cap(), engine=args.engine
            )
            entry["oracle_check"] = {
                "max_len": args.oracle_check,
                "ok": not problems,
                "problems": problems,
            }
        dicts.append(entry)
        text = _render_report(report, args.witness)
        if args.oracle_check is not None:
            verdict = "ok" if entry["oracle_check"]["ok"] else "MISMATCH"
            text += f"oracle check (n={args.oracle_check}): {verdict}\n"
            for problem in entry["oracle_check"]["problems"]:
                text += f"  {problem}\n"
        texts.append(text)

    if args.json:
        payload = dicts if args.batch else dicts[0]
        sys.stdout.write(_json_dump(payload))
    else:
        sys.stdout.write("\n".join(texts) if args.batch else texts[0])
    if any(
        args.oracle_check is not None and not entry["oracle_check"]["ok"]
        for entry in dicts
    ):
        return 1
    return 0


def _cmd_mplus(args) -> int:
    dfa = _read_dfa(args.file)
    plus = m_plus(dfa, args.engine)
    minus = m_minus(dfa, args.engine)
    if args.json:
        sys.stdout.write(
            _json_dump({"m_plus": plus.json_value(), "m_minus": minus.json_value()})
        )
    else:
        sys.stdout.write(f"m_plus: {plus}\nm_minus: {minus}\n")
    return 0


def _cmd_patterns(args) -> int:
    dfa = _read_dfa(args.file)
    witnesses = {"P1": detect_p1(dfa), "P2": detect_p2(dfa), "P3": detect_p3(dfa)}
    if args.json:
        payload = {
            kind: (
                None
                if w is None
                else {
                    "letter": w.letter,
                    "x": w.x,
                    "v": w.v,
                    "y": w.y,
                    "z": w.z,
                    "u": w.u,
                    "z_prime": w.z_prime,
                    "states": list(w.states),
                }
            )
            for kind, w in witnesses.items()
        }
        payload["piecewise_testable"] = witnesses["P3"] is None
        sys.stdout.write(_json_dump(payload))
    else:
        for kind, w in witnesses.items():
            if w is None:
                sys.stdout.write(f"{kind}: none\n")
            else:
                sys.stdout.write(f"{kind}: {_render_witness(w)}\n")
        sys.stdout.write(
            f"piecewise testable: {_yesno(witnesses['P3'] is None)}\n"
        )
    return 0


def _cmd_closure(args) -> int:
    dfa = _read_dfa(args.file)
    _write_output(export(upward_closure(dfa), "native"), args.output)
    return 0


def _cmd_decompose(args) -> int:
    dfa = _read_dfa(args.file)
    decomposition = decompose_level_half(dfa)
    if args.json:
        sys.stdout.write(_json_dump({"ideals": list(decomposition.words)}))
    else:
        for w in decomposition.words:
            sys.stdout.write(_word(w) + "\n")
        if not decomposition.words:
            sys.stdout.write("(empty union)\n")
    return 0


def _cmd_oracle_check(args) -> int:
    dfa = _read_dfa(args.file)
    problems = cross_check(
        dfa, args.max_len, max_m=args.max_m, cap=_word_cap(), engine=args.engine
    )
    if problems:
        for problem in problems:
            sys.stdout.write(f"MISMATCH: {problem}\n")
        return 1
    sys.stdout.write(f"oracle check up to length {args.max_len}: ok\n")
    return 0


def _cmd_export(args) -> int:
    dfa = _read_dfa(args.file)
    if args.minimize:
        dfa = minimize(dfa)
    _write_output(export(dfa, args.format), args.output)
    return 0


def _cmd_gen_mk(args) -> int:
    dfa = mk_witness(args.k, Alphabet(args.alphabet), args.letter)
    _write_output(export(dfa, "native"), args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="subseq",
        description=(
            "Classify a regular language, given as a complete DFA, within the "
            "boolean hierarchy over level 1/2 of the Straubing-Therien hierarchy."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_engine(p):
        p.add_argument(
            "--engine",
            choices=[ENGINE_ITERATE, ENGINE_CHAIN_NFA],
            default=ENGINE_ITERATE,
            help="how to compute level automata (default: %(default)s)",
        )

    p = sub.add_parser("classify", help="full classification report")
    p.add_argument("file", nargs="?", metavar="FILE")
    p.add_argument("--batch", metavar="DIR", help="classify every .dfa file in DIR")
    p.add_argument("--json", action="store_true")
    p.add_argument("--witness", action="store_true", help="show pattern words in text output")
    p.add_argument(
        "--oracle-check",
        type=int,
        metavar="N",
        help="cross-validate against brute force on words up to length N",
    )
    add_engine(p)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("mplus", help="alternation measures only")
    p.add_argument("file", metavar="FILE")
    p.add_argument("--json", action="store_true")
    add_engine(p)
    p.set_defaults(func=_cmd_mplus)

    p = sub.add_parser("patterns", help="forbidden-pattern detection with witnesses")
    p.add_argument("file", metavar="FILE")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_patterns)

    p = sub.add_parser("closure", help="upward closure as a native automaton file")
    p.add_argument("file", metavar="FILE")
    p.add_argument("-o", "--output", metavar="OUT")
    p.set_defaults(func=_cmd_closure)

    p = sub.add_parser("decompose", help="shuffle-ideal decomposition (level 1/2 only)")
    p.add_argument("file", metavar="FILE")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("oracle-check", help="brute-force cross-validation")
    p.add_argument("file", metavar="FILE")
    p.add_argument("--max-len", type=int, default=6, metavar="N")
    p.add_argument("--max-m", type=int, default=3, metavar="M")
    add_engine(p)
    p.set_defaults(func=_cmd_oracle_check)

    p = sub.add_parser("export", help="re-serialize an automaton")
    p.add_argument("file", metavar="FILE")
    p.add_argument("--format", choices=["native", "dot"], default="native")
    p.add_argument("--minimize", action="store_true")
    p.add_argument("-o", "--output", metavar="OUT")
    p.set_defaults(func=_cmd_export)

    p = sub.add_parser("gen-mk", help="generate the level-k witness automaton")
    p.add_argument("k", type=int)
    p.add_argument("--alphabet", default="ab")
    p.add_argument("--letter", default="a")
    p.add_argument("-o", "--output", metavar="OUT")
    p.set_defaults(func=_cmd_gen_mk)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except WordCapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ToolkitError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
