"""Presentation files: parsing and the bundled catalogue.

A presentation file is a jinja2 template rendering to::

    name: s2
    title: O(S^2_q)
    generators: z0 z1
    grading: z0=1 z1=1
    basis: z0^Z z1^N
    rules:
      z1 z0 -> q^-1 z0 z1
    relations:
      z0 z1 = q z1 z0

Hopf algebra files add ``coproduct:``, ``counit:`` and ``antipode:``
sections with lines ``generator -> expression``.
"""

from __future__ import annotations

import re
from functools import lru_cache
from importlib import resources
from pathlib import Path

import jinja2

from .algebra import Presentation, Rule
from .parse import parse_free, parse_word

_KV = re.compile(r"^([A-Za-z_]+):\s*(.*?)\s*$")
_SECTIONS = ("rules", "relations", "coproduct", "counit", "antipode")

# bundled name -> (template file, fixed parameters)
BUNDLED = {
    "s1": ("sphere.pres", {"m": 1}),
    "s2": ("sphere.pres", {"m": 2}),
    "s3": ("sphere.pres", {"m": 3}),
    "s4": ("sphere.pres", {"m": 4}),
    "s5": ("sphere.pres", {"m": 5}),
    "sphere": ("sphere.pres", {}),
    "su2": ("su2.pres", {}),
    "u1": ("u1.pres", {}),
    "z2": ("z2.pres", {}),
    "zp": ("zp.pres", {}),
    "a2n": ("a2n.pres", {}),
    "rp2": ("rp2.pres", {}),
    "ground": ("ground.pres", {}),
}


class PresentationFileError(ValueError):
    pass


def _template_text(fname: str) -> str:
    return resources.files("qbundle.ncalg").joinpath("data", fname).read_text(encoding="utf-8")


_ENV = jinja2.Environment(loader=jinja2.FunctionLoader(_template_text),
                          undefined=jinja2.StrictUndefined, trim_blocks=True,
                          lstrip_blocks=True, keep_trailing_newline=True)


def render(template_text: str, **params) -> str:
    return _ENV.from_string(template_text).render(**params)


def _parse_basis(spec: str):
    """``z0^Z z1^N | ...`` -> list of alternatives, each a list of (name, kind)."""
    alts = []
    for alt in spec.split("|"):
        factors = []
        for tok in alt.split():
            m = re.fullmatch(r"([A-Za-z_][A-Za-z0-9_]*\*?)\^(Z|N|\{(\d+)\.\.(\d+)\})", tok)
            if not m:
                raise PresentationFileError(f"bad basis factor {tok!r}")
            if m.group(2) in ("Z", "N"):
                kind = m.group(2)
            else:
                kind = (int(m.group(3)), int(m.group(4)))
            factors.append((m.group(1), kind))
        alts.append(factors)
    return alts


def parse_presentation(text: str, params=None) -> Presentation:
    header = {}
    sections = {s: [] for s in _SECTIONS}
    current = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        m = _KV.match(line)
        if m and not raw[0].isspace():
            key, value = m.group(1), m.group(2)
            if key in _SECTIONS and not value:
                current = key
                continue
            header[key] = value
            current = None
            continue
        if current is None:
            raise PresentationFileError(f"line {lineno}: item outside a section: {raw!r}")
        sections[current].append((lineno, line.strip()))

    for key in ("name", "generators"):
        if key not in header:
            raise PresentationFileError(f"missing field {key!r}")
    gens = header["generators"].split()
    grading = {}
    for item in header.get("grading", "").split():
        g, d = item.split("=")
        grading[g] = int(d)
    basis = _parse_basis(header["basis"]) if header.get("basis") else []

    # a rule-free shell is enough to resolve names while parsing
    shell = Presentation(header["name"], gens, [], title=header.get("title"))

    def fail(lineno, exc):
        raise PresentationFileError(f"line {lineno}: {exc}") from exc

    rules = []
    for lineno, item in sections["rules"]:
        try:
            lhs, rhs = item.split("->")
            w = parse_word(lhs.strip(), shell)
            free = parse_free(rhs.strip(), (shell,))
        except ValueError as exc:
            fail(lineno, exc)
        rules.append(Rule(w, {k[0]: c for k, c in free.items()}))

    relations = []
    for lineno, item in sections["relations"]:
        try:
            lhs, rhs = item.split("=")
            a = parse_free(lhs.strip(), (shell,))
            b = parse_free(rhs.strip(), (shell,))
        except ValueError as exc:
            fail(lineno, exc)
        free = dict((k[0], c) for k, c in a.items())
        for k, c in b.items():
            s = free.get(k[0], 0) - c
            if s:
                free[k[0]] = s
            else:
                free.pop(k[0], None)
        relations.append((item, free))

    hopf = {}
    for sec, rank in (("coproduct", 2), ("counit", 1), ("antipode", 1)):
        entries = {}
        for lineno, item in sections[sec]:
            try:
                lhs, rhs = item.split("->")
                (x,) = parse_word(lhs.strip(), shell)
                free = parse_free(rhs.strip(), (shell,) * rank)
            except ValueError as exc:
                fail(lineno, exc)
            entries[x] = free
        if entries:
            hopf[sec] = entries

    P = Presentation(header["name"], gens, rules, relations, title=header.get("title"),
                     grading=grading, basis_patterns=basis, sections=hopf, params=params)
    return P


@lru_cache(maxsize=None)
def _load_cached(source, frozen_params):
    params = dict(frozen_params)
    if source.endswith(".pres") and "/" not in source and source in _bundled_files():
        text = _template_text(source)
    else:
        text = Path(source).read_text(encoding="utf-8")
    return parse_presentation(render(text, **params), params=params)


@lru_cache(maxsize=None)
def _bundled_files():
    return frozenset(f for f, _ in BUNDLED.values())


def load_presentation(name: str, **params) -> Presentation:
    """Load a bundled presentation by id (``s2``, ``zp`` with ``p=3``...) or a file path.

    Loads are cached, so equal requests return the same object
    (``load_presentation("s2") is load_presentation("sphere", m=2)``).
    """
    if name in BUNDLED:
        fname, fixed = BUNDLED[name]
        params = {**params, **fixed}
        return _load_cached(fname, tuple(sorted(params.items())))
    path = Path(name)
    if not path.is_file():
        raise PresentationFileError(f"unknown presentation {name!r} (bundled: {', '.join(sorted(BUNDLED))})")
    return _load_cached(str(path.resolve()), tuple(sorted(params.items())))
