"""
Text Notation Utility

Parses and formats generator subsets, words and singular expressions.

Subsets and words are written by concatenating generator labels ("st",
"s1s3"); tokens are matched longest-first, so multi-character labels need
no separators, although commas and spaces are accepted. The empty subset is
"", "∅", "{}" or "e".

Expressions come in two spellings:
    bracket form   [st,s,su,s,st]
    step form      [st] -s +u -s +t
"""

import re
from typing import List, Sequence, Tuple

from scox.core.system import CoxeterSystem, GenSubset
from scox.exceptions import ValidationError

EMPTY_SPELLINGS = ("", "∅", "{}", "e")

Step = Tuple[int, int]  # (sign, generator) with sign in {+1, -1}

_STEP_FORM = re.compile(r"^\s*\[([^\]]*)\]((?:\s*[+\-−]\s*[^\s+\-−\]]+)*)\s*$")
_STEP_TOKEN = re.compile(r"([+\-−])\s*([^\s+\-−]+)")


def tokenize_word(system: CoxeterSystem, text: str) -> List[int]:
    """Split a label string into generator indices, longest label first."""
    text = text.strip()
    if text in EMPTY_SPELLINGS:
        return []
    tokens = system.input_tokens()
    by_length = sorted(tokens, key=len, reverse=True)
    indices = []
    pos = 0
    while pos < len(text):
        if text[pos] in " ,{}":
            pos += 1
            continue
        for label in by_length:
            if text.startswith(label, pos):
                indices.append(tokens[label])
                pos += len(label)
                break
        else:
            raise ValidationError(
                f"cannot read generator at {text[pos:]!r} in {system.name}",
                field="word",
                details={"input": text},
            )
    return indices


def parse_subset(system: CoxeterSystem, text: str) -> GenSubset:
    return frozenset(tokenize_word(system, text))


def parse_word(system: CoxeterSystem, text: str) -> List[int]:
    return tokenize_word(system, text)


def format_subset(system: CoxeterSystem, subset: GenSubset) -> str:
    """Labels concatenated in generator order; "∅" for the empty subset."""
    if not subset:
        return "∅"
    return "".join(system.labels[i] for i in sorted(subset))


def format_word(system: CoxeterSystem, word: Sequence[int]) -> str:
    if not word:
        return "e"
    return "".join(system.labels[i] for i in word)


def subset_labels(system: CoxeterSystem, subset: GenSubset) -> List[str]:
    return [system.labels[i] for i in sorted(subset)]


def parse_expression_text(system: CoxeterSystem, text: str) -> Tuple[GenSubset, List[Step]]:
    """
    Read an expression in bracket or step form.

    Returns:
        (start subset, signed steps); the steps of a bracket form are the
        differences between consecutive subsets, which must differ by
        exactly one generator
    """
    step_form = _STEP_FORM.match(text)
    if step_form and (step_form.group(2).strip() or "," not in step_form.group(1)):
        start = parse_subset(system, step_form.group(1))
        steps = []
        for sign_text, label_text in _STEP_TOKEN.findall(step_form.group(2)):
            gens = tokenize_word(system, label_text)
            if len(gens) != 1:
                raise ValidationError(f"step {sign_text}{label_text} must name one generator", field="expression")
            steps.append((1 if sign_text == "+" else -1, gens[0]))
        return start, steps

    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise ValidationError(f"cannot read expression {text!r}", field="expression")
    body = body[1:-1].strip()
    if body.startswith("[") and body.endswith("]"):
        raise ValidationError("multistep [[...]] input is read by parse_multistep_text", field="expression")
    subsets = [parse_subset(system, part) for part in body.split(",")]
    return subsets[0], steps_from_subsets(system, subsets)


def parse_multistep_text(system: CoxeterSystem, text: str) -> List[GenSubset]:
    """Read [[I0,K1,I1,...]] (or a single bracket) into its chain of subsets."""
    body = text.strip()
    while body.startswith("[") and body.endswith("]"):
        body = body[1:-1].strip()
    return [parse_subset(system, part) for part in body.split(",")]


def steps_from_subsets(system: CoxeterSystem, subsets: Sequence[GenSubset]) -> List[Step]:
    steps = []
    for before, after in zip(subsets, subsets[1:]):
        added, removed = after - before, before - after
        if len(added) == 1 and not removed:
            steps.append((1, next(iter(added))))
        elif len(removed) == 1 and not added:
            steps.append((-1, next(iter(removed))))
        else:
            raise ValidationError(
                f"{format_subset(system, before)} → {format_subset(system, after)} is not a single step",
                field="expression",
            )
    return steps


def format_steps(system: CoxeterSystem, start: GenSubset, steps: Sequence[Step]) -> str:
    """Step form: [st] -s +u -s +t"""
    parts = [f"[{format_subset(system, start) if start else ''}]"]
    parts += [f"{'+' if sign > 0 else '-'}{system.labels[g]}" for sign, g in steps]
    return " ".join(parts)


def format_brackets(system: CoxeterSystem, subsets: Sequence[GenSubset]) -> str:
    """Bracket form: [st,s,su,s,st]"""
    return "[" + ",".join(format_subset(system, s) for s in subsets) + "]"
