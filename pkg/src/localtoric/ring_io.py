"""Ring-definition files, presets and canonical serialization.

Format (line oriented, ``#`` starts a comment)::

    p = 7
    k = 1
    y = x y z
    u = u v

    [relations]
    u^3 = x y^2 z^3          # optional scalar: "u^3 = 2 * x y^2 z^3"

    [bipartite]
    gamma = (3,0) (1,1) (0,3)
    phi = 1/3 2/3 1
    phi = 5/3 1/3 2
    chi = 1 1 1              # optional

    [family]
    m = 3
    alpha = 1 2 3            # one line per u-variable
    alpha = 5 1 6
    beta 1 2 = 2 1 3         # one line per pair of u-variables
    a = 1 1                  # optional, defaults to 1
    b 1 2 = 1                # optional, defaults to 1

Exactly one of the three sections may be present; none means the regular
ring on the y-variables.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .arith import GF
from .binomial import ToricPresentation
from .errors import ParseError, ToricError, ValidationError
from .toric import BipartiteData, FamilyTParams, PhiMatrix, Semigroup, build_bipartite, build_family_T

SECTIONS = ("relations", "bipartite", "family")


@dataclass
class RingDefinition:
    p: int
    k: int = 1
    y_names: tuple = ("x", "y", "z")
    u_names: tuple = ()
    relations: list = field(default_factory=list)  # (lhs exps, scalar int, rhs exps)
    gamma: tuple | None = None
    phi: tuple | None = None
    chi: tuple | None = None
    family: dict | None = None  # m, alphas, betas, a, b

    @property
    def field(self) -> GF:
        return GF(self.p, self.k)

    @property
    def var_names(self):
        return tuple(self.u_names) + tuple(self.y_names)

    def kind(self):
        if self.gamma is not None:
            return "bipartite"
        if self.family is not None:
            return "family"
        return "relations"

    def bipartite_data(self) -> BipartiteData | None:
        if self.gamma is not None:
            return BipartiteData(
                Semigroup(len(self.u_names), self.gamma), PhiMatrix(self.phi), self.field,
                self.chi, tuple(self.y_names), tuple(self.u_names),
            )
        if self.family is not None:
            return self.family_params().to_bipartite(self.field, tuple(self.y_names), tuple(self.u_names))
        return None

    def family_params(self) -> FamilyTParams | None:
        if self.family is None:
            return None
        f = self.family
        return FamilyTParams(len(self.y_names), len(self.u_names), f["m"], f["alphas"], f["betas"], f["a"], f["b"])

    def presentation(self) -> ToricPresentation:
        K = self.field
        if self.gamma is not None:
            return build_bipartite(self.bipartite_data())
        if self.family is not None:
            return build_family_T(self.family_params(), K, tuple(self.y_names), tuple(self.u_names))
        polys = []
        for lhs, c, rhs in self.relations:
            f = {lhs: K.one}
            f[rhs] = K.sub(f.get(rhs, 0), K.coerce(c))
            polys.append({e: v for e, v in f.items() if v})
        return ToricPresentation(K, self.y_names, self.u_names, polys)

    def with_prime(self, p: int) -> "RingDefinition":
        d = RingDefinition(**{**self.__dict__})
        d.p = p
        return d


# ---------------------------------------------------------------- presets

def preset(name: str, p: int | None = None) -> RingDefinition:
    F = Fraction
    if name == "e3":
        return RingDefinition(
            p=p or 7, y_names=("x", "y", "z"), u_names=("u", "v"),
            gamma=((3, 0), (1, 1), (0, 3)),
            phi=((F(1, 3), F(2, 3), F(1)), (F(5, 3), F(1, 3), F(2))),
        )
    if name == "genfam":
        return RingDefinition(
            p=p or 11, y_names=("x", "y", "z"), u_names=("u", "v"),
            gamma=((2, 0), (1, 3), (0, 6)),
            phi=((F(1, 2), F(1), F(2)), (F(5, 6), F(1), F(1, 3))),
        )
    if name == "e3-family":
        return RingDefinition(
            p=p or 7, y_names=("x", "y", "z"), u_names=("u", "v"),
            family={"m": 3, "alphas": ((1, 2, 3), (5, 1, 6)), "betas": {(0, 1): (2, 1, 3)},
                    "a": (1, 1), "b": {(0, 1): 1}},
        )
    raise ValidationError(f"unknown preset {name!r}")


PRESETS = ("e3", "genfam", "e3-family")


# ---------------------------------------------------------------- parsing

_NAME = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


def _parse_monomial(text, names, lineno, col):
    exps = [0] * len(names)
    text = text.replace("*", " ").strip()
    if text in ("", "1"):
        return tuple(exps)
    for tok in text.split():
        m = re.fullmatch(r"([A-Za-z_][A-Za-z_0-9]*)(?:\^(\d+))?", tok)
        if not m:
            raise ParseError(f"bad monomial token {tok!r}", lineno, col + text.find(tok))
        if m.group(1) not in names:
            raise ParseError(f"unknown variable {m.group(1)!r}", lineno, col + text.find(tok))
        exps[names.index(m.group(1))] += int(m.group(2) or 1)
    return tuple(exps)


def _ints(text, lineno, col):
    try:
        return tuple(int(x) for x in text.replace(",", " ").split())
    except ValueError:
        raise ParseError(f"expected integers, got {text!r}", lineno, col) from None


def _fracs(text, lineno, col):
    try:
        return tuple(Fraction(x) for x in text.replace(",", " ").split())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"expected fractions, got {text!r}", lineno, col) from None


def parse_ring(data) -> RingDefinition:
    """Parse definition text (str or UTF-8 bytes)."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError("input is not UTF-8", 1, 1) from exc
    header = {}
    section = None
    seen_sections = []
    rel_lines, bip, fam = [], {"phi": []}, {"alpha": [], "beta": {}, "b": {}}
    for lineno, raw in enumerate(data.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        col = len(line) - len(line.lstrip()) + 1
        s = line.strip()
        if s.startswith("["):
            m = re.fullmatch(r"\[(\w+)\]", s)
            if not m or m.group(1) not in SECTIONS:
                raise ParseError(f"unknown section {s}", lineno, col)
            section = m.group(1)
            if section in seen_sections:
                raise ParseError(f"duplicate section [{section}]", lineno, col)
            seen_sections.append(section)
            continue
        if "=" not in s:
            raise ParseError("expected 'key = value'", lineno, col)
        key, value = (t.strip() for t in s.split("=", 1))
        after = s[s.index("=") + 1:]
        vcol = col + s.index("=") + 1 + len(after) - len(after.lstrip())
        if section is None:
            if key not in ("p", "k", "y", "u"):
                raise ParseError(f"unknown header key {key!r}", lineno, col)
            header[key] = (value, lineno, vcol)
        elif section == "relations":
            rel_lines.append((key, value, lineno, col, vcol))
        elif section == "bipartite":
            if key == "gamma":
                tuples = re.findall(r"\(([^)]*)\)", value)
                if not tuples:
                    raise ParseError("gamma expects tuples like (3,0)", lineno, vcol)
                bip["gamma"] = tuple(_ints(t, lineno, vcol) for t in tuples)
            elif key == "phi":
                bip["phi"].append(_fracs(value, lineno, vcol))
            elif key == "chi":
                bip["chi"] = _ints(value, lineno, vcol)
            else:
                raise ParseError(f"unknown bipartite key {key!r}", lineno, col)
        else:
            parts = key.split()
            if parts[0] == "m" and len(parts) == 1:
                fam["m"] = _ints(value, lineno, vcol)[0]
            elif parts[0] == "alpha" and len(parts) == 1:
                fam["alpha"].append(_ints(value, lineno, vcol))
            elif parts[0] == "a" and len(parts) == 1:
                fam["a"] = _ints(value, lineno, vcol)
            elif parts[0] in ("beta", "b") and len(parts) == 3:
                i, j = (int(x) - 1 for x in parts[1:])
                target = fam["beta"] if parts[0] == "beta" else fam["b"]
                target[(i, j)] = _ints(value, lineno, vcol) if parts[0] == "beta" else _ints(value, lineno, vcol)[0]
            else:
                raise ParseError(f"unknown family key {key!r}", lineno, col)
    if len(seen_sections) > 1:
        raise ValidationError("at most one of [relations], [bipartite], [family] may be given")
    if "p" not in header:
        raise ParseError("missing header 'p = <prime>'", 1, 1)

    def hval(key, default):
        if key not in header:
            return default
        return header[key]

    try:
        p = int(header["p"][0])
        k = int(hval("k", ("1",))[0])
    except ValueError:
        raise ParseError("p and k must be integers", header["p"][1], header["p"][2]) from None
    y_names = tuple(hval("y", ("x y z",))[0].split())
    u_names = tuple(hval("u", ("",))[0].split())
    for n in y_names + u_names:
        if not _NAME.fullmatch(n):
            raise ParseError(f"bad variable name {n!r}", header.get("y", header.get("u"))[1], 1)
    if len(set(y_names + u_names)) != len(y_names + u_names):
        raise ValidationError("variable names must be distinct")
    names = u_names + y_names
    d = RingDefinition(p=p, k=k, y_names=y_names, u_names=u_names)
    for lhs, rhs, lineno, col, vcol in rel_lines:
        m = re.fullmatch(r"\s*(-?\d+)\s*\*\s*(.*)", rhs)
        c, rhs_mono = (int(m.group(1)), m.group(2)) if m else (1, rhs)
        d.relations.append((_parse_monomial(lhs, names, lineno, col), c,
                            _parse_monomial(rhs_mono, names, lineno, vcol)))
    if "bipartite" in seen_sections:
        if "gamma" not in bip or not bip["phi"]:
            raise ValidationError("bipartite block needs gamma and phi")
        d.gamma, d.phi, d.chi = bip["gamma"], tuple(bip["phi"]), bip.get("chi")
    if "family" in seen_sections:
        n = len(u_names)
        if "m" not in fam:
            raise ValidationError("family block needs m")
        d.family = {
            "m": fam["m"],
            "alphas": tuple(fam["alpha"]),
            "betas": dict(fam["beta"]),
            "a": fam.get("a", (1,) * n),
            "b": {pair: fam["b"].get(pair, 1) for pair in fam["beta"]},
        }
    validate(d)
    return d


def validate(d: RingDefinition):
    """Build the presentation once; engine errors become ValidationError."""
    try:
        if d.family is not None:
            d.family_params().validate(d.field)
        d.presentation()
    except ValidationError:
        raise
    except (ToricError, ValueError) as exc:
        raise ValidationError(str(exc), cause=getattr(exc, "code", "value_error")) from exc


# ---------------------------------------------------------------- serialization

def _mono_text(exps, names):
    parts = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, exps) if e]
    return " ".join(parts) or "1"


def serialize_ring(d: RingDefinition) -> str:
    lines = [f"p = {d.p}", f"k = {d.k}", f"y = {' '.join(d.y_names)}", f"u = {' '.join(d.u_names)}"]
    names = d.var_names
    if d.gamma is not None:
        lines += ["", "[bipartite]", "gamma = " + " ".join("(" + ",".join(map(str, g)) + ")" for g in d.gamma)]
        lines += ["phi = " + " ".join(str(x) for x in row) for row in d.phi]
        if d.chi is not None:
            lines.append("chi = " + " ".join(map(str, d.chi)))
    elif d.family is not None:
        f = d.family
        lines += ["", "[family]", f"m = {f['m']}"]
        lines += ["alpha = " + " ".join(map(str, a)) for a in f["alphas"]]
        for (i, j), beta in sorted(f["betas"].items()):
            lines.append(f"beta {i + 1} {j + 1} = " + " ".join(map(str, beta)))
        lines.append("a = " + " ".join(map(str, f["a"])))
        for (i, j), b in sorted(f["b"].items()):
            lines.append(f"b {i + 1} {j + 1} = {b}")
    elif d.relations:
        lines += ["", "[relations]"]
        for lhs, c, rhs in d.relations:
            scalar = "" if c == 1 else f"{c} * "
            lines.append(f"{_mono_text(lhs, names)} = {scalar}{_mono_text(rhs, names)}")
    return "\n".join(lines) + "\n"
