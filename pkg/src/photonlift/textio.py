"""Plain-text formats for matrices, states, bases and element lists.

Matrix files hold one row per line with entries separated by single spaces;
each entry is written ``<re><sign><im>i`` (``0.5-0.5i``, ``1+0i``). Blank
lines and lines starting with ``#`` are skipped by every reader.

State files hold one term per line, ``n1 n2 ... nm : re+imi``.

Element lists start with ``modes m`` followed by one element per line::

    T k l theta phi [inv]
    D phi_1 ... phi_m
    LOSS k d
    GAIN k d
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Iterable, TextIO

import numpy as np

from .circuits import BeamSplitter, ElementList, GainChannel, LossChannel, PhaseDiag
from .errors import ParseError
from .fock import FockBasis, StateVector
from .fock import basis as default_basis


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield no, line


def format_real(x: float) -> str:
    """Shortest decimal that reads back to the same double (``1.0`` -> ``1``)."""
    text = repr(float(x))
    return text[:-2] if text.endswith(".0") else text


def format_complex(z: complex) -> str:
    z = complex(z)
    re, im = z.real, z.imag
    sign = "-" if math.copysign(1.0, im) < 0 else "+"
    return f"{format_real(re)}{sign}{format_real(abs(im))}i"


def parse_complex(token: str, line: int = 0) -> complex:
    try:
        return complex(token.replace("i", "j"))
    except ValueError:
        raise ParseError(f"bad complex entry {token!r}", line) from None


def dumps_matrix(A) -> str:
    A = np.atleast_2d(np.asarray(A, dtype=complex))
    return "".join(" ".join(format_complex(z) for z in row) + "\n" for row in A)


def loads_matrix(text: str) -> np.ndarray:
    rows = []
    for no, line in _lines(text):
        row = [parse_complex(tok, no) for tok in line.split()]
        if rows and len(row) != len(rows[0]):
            raise ParseError(f"row has {len(row)} entries, expected {len(rows[0])}", no)
        rows.append(row)
    if not rows:
        raise ParseError("no matrix rows found")
    return np.array(rows, dtype=complex)


def _read(path) -> str:
    return Path(path).read_text()


def _with_path(fn, path):
    try:
        return fn(_read(path))
    except ParseError as exc:
        raise ParseError(str(exc).removeprefix(f"line {exc.line}: "), exc.line, path) from None


def read_matrix(path) -> np.ndarray:
    return _with_path(loads_matrix, path)


def write_matrix(path, A, header: str | None = None) -> None:
    text = dumps_matrix(A)
    if header:
        text = "".join(f"# {h}\n" for h in header.splitlines()) + text
    Path(path).write_text(text)


# ---------------------------------------------------------------------------
# bases and states


def dumps_basis(basis: FockBasis) -> str:
    return "".join(" ".join(map(str, s)) + "\n" for s in basis)


def loads_basis(text: str) -> FockBasis:
    states = []
    for no, line in _lines(text):
        try:
            states.append(tuple(int(k) for k in line.split()))
        except ValueError:
            raise ParseError(f"bad occupation vector {line!r}", no) from None
    if not states:
        raise ParseError("empty basis")
    return FockBasis(len(states[0]), sum(states[0]), tuple(states))


def dumps_state(state: StateVector, atol: float = 0.0) -> str:
    return "".join(
        " ".join(map(str, occ)) + " : " + format_complex(a) + "\n" for occ, a in state.terms(atol)
    )


def loads_state_terms(text: str) -> tuple[list[tuple[int, ...]], list[complex]]:
    terms, weights = [], []
    for no, line in _lines(text):
        occ, sep, amp = line.partition(":")
        if not sep:
            raise ParseError("expected 'n1 ... nm : amplitude'", no)
        try:
            terms.append(tuple(int(k) for k in occ.split()))
        except ValueError:
            raise ParseError(f"bad occupation vector {occ.strip()!r}", no) from None
        weights.append(parse_complex(amp.strip(), no))
        if len(terms[-1]) != len(terms[0]) or sum(terms[-1]) != sum(terms[0]):
            raise ParseError("all terms must share the same mode and photon count", no)
    if not terms:
        raise ParseError("state has no terms")
    return terms, weights


def loads_state(text: str, basis: FockBasis | None = None) -> StateVector:
    terms, weights = loads_state_terms(text)
    if basis is None:
        basis = default_basis(len(terms[0]), sum(terms[0]))
    amps = np.zeros(len(basis), dtype=complex)
    for ket, w in zip(terms, weights):
        amps[basis.index(ket)] += w
    return StateVector(basis, amps)


def read_state(path, basis: FockBasis | None = None) -> StateVector:
    return _with_path(lambda text: loads_state(text, basis), path)


def write_state(path, state: StateVector) -> None:
    Path(path).write_text(dumps_state(state))


# ---------------------------------------------------------------------------
# element lists


def dumps_elements(elements: ElementList) -> str:
    out = [f"modes {elements.m}"]
    for e in elements:
        if isinstance(e, BeamSplitter):
            line = f"T {e.k} {e.l} {format_real(e.theta)} {format_real(e.phi)}"
            out.append(line + " inv" if e.inverted else line)
        elif isinstance(e, PhaseDiag):
            out.append("D " + " ".join(format_real(p) for p in e.phases))
        elif isinstance(e, LossChannel):
            out.append(f"LOSS {e.mode} {format_real(e.d)}")
        elif isinstance(e, GainChannel):
            out.append(f"GAIN {e.mode} {format_real(e.d)}")
        else:
            raise TypeError(f"not an optical element: {e!r}")
    return "\n".join(out) + "\n"


def loads_elements(text: str) -> ElementList:
    lines: Iterable = _lines(text)
    m = None
    elements = []
    for no, line in lines:
        tok = line.split()
        kind = tok[0].upper()
        try:
            if kind == "MODES":
                m = int(tok[1])
            elif kind == "T" and len(tok) in (5, 6):
                if len(tok) == 6 and tok[5].lower() != "inv":
                    raise ValueError
                elements.append(BeamSplitter(int(tok[1]), int(tok[2]), float(tok[3]), float(tok[4]), len(tok) == 6))
            elif kind == "D":
                elements.append(PhaseDiag(tuple(float(p) for p in tok[1:])))
            elif kind == "LOSS" and len(tok) == 3:
                elements.append(LossChannel(int(tok[1]), float(tok[2])))
            elif kind == "GAIN" and len(tok) == 3:
                elements.append(GainChannel(int(tok[1]), float(tok[2])))
            else:
                raise ValueError
        except (ValueError, IndexError):
            raise ParseError(f"bad element line {line!r}", no) from None
    if m is None:
        raise ParseError("missing 'modes m' header")
    return ElementList(m, elements)


def read_elements(path) -> ElementList:
    return _with_path(loads_elements, path)


def write_elements(path, elements: ElementList) -> None:
    Path(path).write_text(dumps_elements(elements))


def write_text(path, text: str, stream: TextIO | None = None) -> None:
    """Write to ``path``, or to ``stream`` when no path is given."""
    if path:
        Path(path).write_text(text)
    elif stream is not None:
        stream.write(text)
