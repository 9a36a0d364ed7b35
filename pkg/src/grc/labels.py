"""State labels and ordered label spaces.

A label is a text token or an ordered pair of labels (product spaces). Spaces are
tuples of pairwise distinct labels; their order is the order rows and columns are
listed in.
"""

from __future__ import annotations

import re
from collections.abc import Iterable
from typing import Union

from .errors import InvalidSpace

Label = Union[str, tuple["Label", "Label"]]
Space = tuple[Label, ...]

UNIT_LABEL: Label = "*"
UNIT_SPACE: Space = (UNIT_LABEL,)

_TOKEN = re.compile(r"[^\s(),]+")


def label_key(label: Label) -> tuple:
    """Total order on labels: strings lexicographically, pairs componentwise,
    every string before every pair."""
    if isinstance(label, str):
        return (0, label)
    return (1, tuple(label_key(part) for part in label))


def format_label(label: Label) -> str:
    if isinstance(label, str):
        return label
    left, right = label
    return f"({format_label(left)},{format_label(right)})"


def parse_label(text: str) -> Label:
    """Inverse of :func:`format_label`."""
    label, rest = _parse(text.strip(), text)
    if rest:
        raise InvalidSpace(f"trailing text in label {text!r}")
    return label


def _parse(text: str, original: str) -> tuple[Label, str]:
    if text.startswith("("):
        left, rest = _parse(text[1:], original)
        if not rest.startswith(","):
            raise InvalidSpace(f"expected ',' in label {original!r}")
        right, rest = _parse(rest[1:], original)
        if not rest.startswith(")"):
            raise InvalidSpace(f"expected ')' in label {original!r}")
        return (left, right), rest[1:]
    match = _TOKEN.match(text)
    if not match:
        raise InvalidSpace(f"malformed label {original!r}")
    return match.group(0), text[match.end():]


def make_space(labels: Iterable[Label]) -> Space:
    """Build an ordered space; labels must be distinct and the space nonempty."""
    space = tuple(labels)
    if not space:
        raise InvalidSpace("a space needs at least one label")
    seen: set[Label] = set()
    for label in space:
        if not isinstance(label, (str, tuple)):
            raise InvalidSpace(f"labels must be text or pairs, got {label!r}")
        if label in seen:
            raise InvalidSpace(f"duplicate label {format_label(label)!r}")
        seen.add(label)
    return space


def product_space(left: Space, right: Space) -> Space:
    return tuple((x, u) for x in left for u in right)


def micro_label(label: Label, index: int) -> Label:
    """Label of the index-th microstate encoding ``label``.

    Index 0 is the label itself, so it is always the least member of its block.
    """
    if index == 0:
        return label
    if isinstance(label, str):
        return f"{label}~{index}"
    return (micro_label(label[0], index), label[1])
