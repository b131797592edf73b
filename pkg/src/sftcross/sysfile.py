"""System files: a shift space, optional fiber weights and named functions, as JSON.

::

    {
      "symbols": ["a", "b"],
      "matrix": [[1, 1], [1, 0]],
      "weights": [["a", "a", "1/2"], ["b", "a", "1/2"], ["a", "b", "1"]],
      "functions": {"f": {"depth": 1, "values": {"a": "1", "b": "sqrt(2)*i"}}}
    }

A weight triple ``[b, c, q]`` is the mass of ``b`` in the fiber over points
starting with ``c``.  Words in function tables are comma separated symbol
names; when every name is a single character they may also be written
without separators, and the empty word is ``""``.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .cylfun import CylFun
from .measure import TransferWeights, WeightsError
from .scalar import ScalarError, parse_scalar
from .sft import InvalidMatrixError, TransitionMatrix

__all__ = ["SystemFileError", "SystemFile", "parse_system", "load_system"]


class SystemFileError(ValueError):
    def __init__(self, msg: str, location: str = ""):
        super().__init__(f"{location}: {msg}" if location else msg)
        self.location = location


@dataclass(frozen=True)
class SystemFile:
    symbols: tuple
    matrix: TransitionMatrix
    weights: Optional[TransferWeights] = None
    functions: dict = field(default_factory=dict)

    def word_name(self, w) -> str:
        return ",".join(self.symbols[s] for s in w)


def _reserved(name: str) -> bool:
    return name in {"S", "ind", "Lam", "sqrt", "i"} or re.fullmatch(r"u\d+", name) is not None


def _parse_word(key: str, index: dict, single: bool, loc: str) -> tuple:
    if key == "":
        return ()
    parts = key.split(",") if ("," in key or not single) else list(key)
    try:
        return tuple(index[p.strip()] for p in parts)
    except KeyError as e:
        raise SystemFileError(f"unknown symbol {e.args[0]!r} in word {key!r}", loc) from None


def _rational(v, loc: str) -> Fraction:
    try:
        # decimals are read as written, not as binary floats
        return Fraction(repr(v)) if isinstance(v, float) else Fraction(v)
    except (ValueError, TypeError, ZeroDivisionError) as e:
        raise SystemFileError(f"malformed rational {v!r} ({e})", loc) from None


def parse_system(text) -> SystemFile:
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as e:
            raise SystemFileError(f"not UTF-8 ({e})") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise SystemFileError(f"invalid JSON: {e.msg}", f"line {e.lineno} column {e.colno}") from None
    if not isinstance(data, dict):
        raise SystemFileError("top level must be an object")
    unknown = set(data) - {"symbols", "matrix", "weights", "functions"}
    if unknown:
        raise SystemFileError(f"unknown keys {sorted(unknown)}")

    rows = data.get("matrix")
    if not isinstance(rows, list) or not rows:
        raise SystemFileError("missing or empty matrix", "matrix")
    try:
        A = TransitionMatrix(rows)
    except InvalidMatrixError as e:
        raise SystemFileError(str(e), "matrix") from None

    symbols = data.get("symbols", [str(j) for j in range(A.n_symbols)])
    if not isinstance(symbols, list) or not all(isinstance(s, str) and s for s in symbols):
        raise SystemFileError("symbols must be a list of nonempty strings", "symbols")
    if len(symbols) != A.n_symbols:
        raise SystemFileError(f"{len(symbols)} names for {A.n_symbols} symbols", "symbols")
    if len(set(symbols)) != len(symbols):
        raise SystemFileError("duplicate symbol names", "symbols")
    bad = [s for s in symbols if not re.fullmatch(r"\w+", s)]
    if bad:
        raise SystemFileError(f"symbol names must be alphanumeric: {bad}", "symbols")
    index = {s: j for j, s in enumerate(symbols)}
    single = all(len(s) == 1 for s in symbols)

    weights = None
    if data.get("weights") is not None:
        table = {}
        for k, triple in enumerate(data["weights"]):
            loc = f"weights[{k}]"
            if not (isinstance(triple, list) and len(triple) == 3):
                raise SystemFileError("expected [from, to, rational]", loc)
            b, c, q = triple
            if b not in index or c not in index:
                raise SystemFileError(f"unknown symbol in edge ({b}, {c})", loc)
            edge = (index[b], index[c])
            if edge in table:
                raise SystemFileError(f"duplicate edge ({b}, {c})", loc)
            table[edge] = _rational(q, loc)
        try:
            weights = TransferWeights(A, table)
        except WeightsError as e:
            raise SystemFileError(str(e), "weights") from None

    functions = {}
    for name, entry in (data.get("functions") or {}).items():
        loc = f"functions.{name}"
        if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", name) or _reserved(name):
            raise SystemFileError("function names must be identifiers other than S, ind, Lam, sqrt, i, u<k>", loc)
        if not isinstance(entry, dict) or not isinstance(entry.get("depth"), int) or entry["depth"] < 0:
            raise SystemFileError("expected {depth: nat, values: {word: scalar}}", loc)
        depth = entry["depth"]
        values = {}
        for key, lit in (entry.get("values") or {}).items():
            w = _parse_word(key, index, single, loc)
            if len(w) != depth or not A.is_admissible(w):
                raise SystemFileError(f"word {key!r} is not an admissible word of length {depth}", loc)
            try:
                values[w] = parse_scalar(str(lit))
            except ScalarError as e:
                raise SystemFileError(f"word {key!r}: {e}", loc) from None
        missing = [w for w in A.words(depth) if w not in values]
        if missing:
            shown = ", ".join(repr(",".join(symbols[s] for s in w)) for w in missing[:5])
            raise SystemFileError(f"missing values for admissible words {shown}", loc)
        functions[name] = CylFun(A, depth, values)
    return SystemFile(tuple(symbols), A, weights, functions)


def load_system(path) -> SystemFile:
    with open(path, "rb") as fh:
        return parse_system(fh.read())
