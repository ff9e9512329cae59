"""Exact trivariate polynomial arithmetic over the rationals.

Polynomials are sparse maps from exponent triples to nonzero Fraction
coefficients.  Homogeneous forms carry an explicit degree so that the zero
form of each degree stays well typed under graded maps.  Coefficients are
restricted to the rationals; every value is immutable after construction and
every operation is pure, so the module is safe to use from multiple threads.

The expression grammar accepted by :func:`parse_polynomial`::

    expr   := ["+"|"-"] term (("+"|"-") term)*
    term   := factor ("*" factor)*
    factor := base ("^" NAT)?
    base   := NUMBER ["/" NUMBER] | "x" | "y" | "z" | "(" expr ")"

Whitespace is insignificant, ``^`` binds tighter than ``*`` binds tighter
than ``+``/``-``, and ``p/q`` is a rational literal (general division is not
part of the grammar).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

Mono3 = tuple[int, int, int]
Mono2 = tuple[int, int]

VAR_NAMES = ("x", "y", "z")
_VAR_INDEX = {"x": 0, "y": 1, "z": 2}


class PolynomialSyntaxError(ValueError):
    """Malformed polynomial expression.  ``position`` is a 0-based offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class NonHomogeneousError(ValueError):
    """An expression expanded to terms of mixed total degree."""


def degree_dimension(t: int) -> int:
    """Dimension of the space of degree-t forms in three variables."""
    return (t + 1) * (t + 2) // 2 if t >= 0 else 0


def monomials_of_degree(t: int) -> list[Mono3]:
    """All exponent triples of total degree t in descending grlex order."""
    if t < 0:
        return []
    return [(i, j, t - i - j) for i in range(t, -1, -1) for j in range(t - i, -1, -1)]


def _grlex_key(mono: tuple[int, ...]) -> tuple[int, ...]:
    return (sum(mono),) + mono[:-1]


def _format_terms(items: list[tuple[str, Fraction]]) -> str:
    """Join (monomial text, coefficient) pairs into a parseable expression."""
    parts: list[str] = []
    for mono_text, coeff in items:
        mag = abs(coeff)
        if mono_text:
            body = mono_text if mag == 1 else f"{mag}*{mono_text}"
        else:
            body = str(mag)
        if not parts:
            parts.append(body if coeff > 0 else f"-{body}")
        else:
            parts.append(f"{'+' if coeff > 0 else '-'} {body}")
    return " ".join(parts) if parts else "0"


def _mono3_text(mono: Mono3) -> str:
    factors = []
    for name, e in zip(VAR_NAMES, mono):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f"{name}^{e}")
    return "*".join(factors)


class HomogeneousPolynomial:
    """A homogeneous form in x, y, z with exact rational coefficients.

    The zero form is the empty term map together with a declared degree.
    """

    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms: dict[Mono3, Fraction | int]):
        if degree < 0:
            raise ValueError("degree must be nonnegative")
        clean: dict[Mono3, Fraction] = {}
        for mono, coeff in terms.items():
            c = Fraction(coeff)
            if c == 0:
                continue
            if len(mono) != 3 or min(mono) < 0:
                raise ValueError(f"bad exponent triple {mono!r}")
            if sum(mono) != degree:
                raise ValueError(
                    f"monomial {mono} has degree {sum(mono)}, expected {degree}"
                )
            clean[mono] = c
        self.degree = degree
        self.terms = clean

    @classmethod
    def zero(cls, degree: int) -> "HomogeneousPolynomial":
        return cls(degree, {})

    @classmethod
    def monomial(cls, mono: Mono3, coeff: Fraction | int = 1) -> "HomogeneousPolynomial":
        return cls(sum(mono), {mono: Fraction(coeff)})

    @classmethod
    def variable(cls, name: str) -> "HomogeneousPolynomial":
        mono = [0, 0, 0]
        mono[_VAR_INDEX[name]] = 1
        return cls(1, {tuple(mono): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HomogeneousPolynomial):
            return NotImplemented
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.degree, frozenset(self.terms.items())))

    def __add__(self, other: "HomogeneousPolynomial") -> "HomogeneousPolynomial":
        if self.degree != other.degree:
            raise ValueError(
                f"cannot add forms of degrees {self.degree} and {other.degree}"
            )
        out = dict(self.terms)
        for mono, c in other.terms.items():
            out[mono] = out.get(mono, Fraction(0)) + c
        return HomogeneousPolynomial(self.degree, out)

    def __sub__(self, other: "HomogeneousPolynomial") -> "HomogeneousPolynomial":
        return self + (-other)

    def __neg__(self) -> "HomogeneousPolynomial":
        return HomogeneousPolynomial(
            self.degree, {m: -c for m, c in self.terms.items()}
        )

    def __mul__(self, other: "HomogeneousPolynomial") -> "HomogeneousPolynomial":
        out: dict[Mono3, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
                out[m] = out.get(m, Fraction(0)) + c1 * c2
        return HomogeneousPolynomial(self.degree + other.degree, out)

    def __pow__(self, n: int) -> "HomogeneousPolynomial":
        if n < 0:
            raise ValueError("negative power")
        result = HomogeneousPolynomial(0, {(0, 0, 0): Fraction(1)})
        for _ in range(n):
            result = result * self
        return result

    def scale(self, c: Fraction | int) -> "HomogeneousPolynomial":
        c = Fraction(c)
        return HomogeneousPolynomial(
            self.degree, {m: c * v for m, v in self.terms.items()}
        )

    def partial(self, var: str) -> "HomogeneousPolynomial":
        """Formal partial derivative; the degree drops by one."""
        if self.degree < 1:
            raise ValueError("derivative needs degree >= 1")
        i = _VAR_INDEX[var]
        out: dict[Mono3, Fraction] = {}
        for mono, c in self.terms.items():
            if mono[i] == 0:
                continue
            m = list(mono)
            m[i] -= 1
            out[tuple(m)] = c * mono[i]
        return HomogeneousPolynomial(self.degree - 1, out)

    def evaluate(self, point: tuple[Fraction | int, ...]) -> Fraction:
        px, py, pz = (Fraction(v) for v in point)
        total = Fraction(0)
        for (i, j, k), c in self.terms.items():
            total += c * px**i * py**j * pz**k
        return total

    def sorted_terms(self) -> list[tuple[Mono3, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def __str__(self) -> str:
        return _format_terms([(_mono3_text(m), c) for m, c in self.sorted_terms()])

    def __repr__(self) -> str:
        return f"HomogeneousPolynomial({self.degree}, {self})"


class AffinePolynomial:
    """A bivariate polynomial with exact rational coefficients.

    Used for local equations of curves in an affine chart centered at a
    point of interest.  ``var_names`` records which projective coordinates
    the two local variables came from; it is display metadata only and does
    not participate in equality.
    """

    __slots__ = ("terms", "var_names")

    def __init__(
        self,
        terms: dict[Mono2, Fraction | int],
        var_names: tuple[str, str] = ("x", "y"),
    ):
        clean: dict[Mono2, Fraction] = {}
        for mono, coeff in terms.items():
            c = Fraction(coeff)
            if c == 0:
                continue
            if len(mono) != 2 or min(mono) < 0:
                raise ValueError(f"bad exponent pair {mono!r}")
            clean[mono] = c
        self.terms = clean
        self.var_names = var_names

    @classmethod
    def constant(cls, c: Fraction | int) -> "AffinePolynomial":
        return cls({(0, 0): Fraction(c)})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AffinePolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "AffinePolynomial") -> "AffinePolynomial":
        out = dict(self.terms)
        for mono, c in other.terms.items():
            out[mono] = out.get(mono, Fraction(0)) + c
        return AffinePolynomial(out, self.var_names)

    def __sub__(self, other: "AffinePolynomial") -> "AffinePolynomial":
        return self + (-other)

    def __neg__(self) -> "AffinePolynomial":
        return AffinePolynomial({m: -c for m, c in self.terms.items()}, self.var_names)

    def __mul__(self, other: "AffinePolynomial") -> "AffinePolynomial":
        out: dict[Mono2, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = (m1[0] + m2[0], m1[1] + m2[1])
                out[m] = out.get(m, Fraction(0)) + c1 * c2
        return AffinePolynomial(out, self.var_names)

    def __pow__(self, n: int) -> "AffinePolynomial":
        result = AffinePolynomial.constant(1)
        result.var_names = self.var_names
        for _ in range(n):
            result = result * self
        return result

    def scale(self, c: Fraction | int) -> "AffinePolynomial":
        c = Fraction(c)
        return AffinePolynomial({m: c * v for m, v in self.terms.items()}, self.var_names)

    def coefficient(self, mono: Mono2) -> Fraction:
        return self.terms.get(mono, Fraction(0))

    def constant_term(self) -> Fraction:
        return self.coefficient((0, 0))

    def order_at_origin(self) -> int | None:
        """Smallest total degree of a term, or None for the zero polynomial."""
        if not self.terms:
            return None
        return min(u + v for u, v in self.terms)

    def evaluate(self, point: tuple[Fraction | int, Fraction | int]) -> Fraction:
        pu, pv = (Fraction(v) for v in point)
        total = Fraction(0)
        for (u, v), c in self.terms.items():
            total += c * pu**u * pv**v
        return total

    def sorted_terms(self) -> list[tuple[Mono2, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def __str__(self) -> str:
        def mono_text(mono: Mono2) -> str:
            factors = []
            for name, e in zip(self.var_names, mono):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            return "*".join(factors)

        return _format_terms([(mono_text(m), c) for m, c in self.sorted_terms()])

    def __repr__(self) -> str:
        return f"AffinePolynomial({self})"


@dataclass(frozen=True)
class ProjectivePoint:
    """A rational projective point in canonical integer form.

    Coordinates are coprime integers and the last nonzero coordinate is
    positive, so equal points compare equal and hash consistently.
    """

    x: int
    y: int
    z: int

    @classmethod
    def of(cls, x: Fraction | int, y: Fraction | int, z: Fraction | int) -> "ProjectivePoint":
        fx, fy, fz = Fraction(x), Fraction(y), Fraction(z)
        if fx == fy == fz == 0:
            raise ValueError("(0,0,0) is not a projective point")
        denom_lcm = 1
        for f in (fx, fy, fz):
            denom_lcm = denom_lcm * f.denominator // gcd(denom_lcm, f.denominator)
        ix, iy, iz = (int(f * denom_lcm) for f in (fx, fy, fz))
        g = gcd(gcd(abs(ix), abs(iy)), abs(iz))
        ix, iy, iz = ix // g, iy // g, iz // g
        last = iz if iz != 0 else (iy if iy != 0 else ix)
        if last < 0:
            ix, iy, iz = -ix, -iy, -iz
        return cls(ix, iy, iz)

    @classmethod
    def parse(cls, text: str) -> "ProjectivePoint":
        """Parse ``a:b:c`` (optionally parenthesized) with rational entries."""
        body = text.strip()
        if body.startswith("(") and body.endswith(")"):
            body = body[1:-1]
        parts = body.split(":")
        if len(parts) != 3:
            raise ValueError(f"expected 'x:y:z', got {text!r}")
        return cls.of(*(Fraction(p.strip()) for p in parts))

    def coords(self) -> tuple[int, int, int]:
        return (self.x, self.y, self.z)

    def __str__(self) -> str:
        return f"({self.x}:{self.y}:{self.z})"


# ---------------------------------------------------------------------------
# Parsing


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str) -> PolynomialSyntaxError:
        return PolynomialSyntaxError(message, self.pos)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self) -> str:
        ch = self.peek()
        self.pos += 1
        return ch

    def parse(self) -> dict[Mono3, Fraction]:
        result = self.parse_expr()
        if self.peek():
            raise self.error(f"unexpected character {self.peek()!r}")
        return result

    def parse_expr(self) -> dict[Mono3, Fraction]:
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take() == "-" else 1
        total = _scale(self.parse_term(), sign)
        while self.peek() in ("+", "-"):
            op = self.take()
            term = self.parse_term()
            total = _add(total, _scale(term, -1 if op == "-" else 1))
        return total

    def parse_term(self) -> dict[Mono3, Fraction]:
        product = self.parse_factor()
        while self.peek() == "*":
            self.take()
            product = _mul(product, self.parse_factor())
        return product

    def parse_factor(self) -> dict[Mono3, Fraction]:
        base = self.parse_base()
        if self.peek() == "^":
            self.take()
            exponent = self.parse_nat()
            return _power(base, exponent)
        return base

    def parse_base(self) -> dict[Mono3, Fraction]:
        ch = self.peek()
        if ch == "(":
            self.take()
            inner = self.parse_expr()
            if self.peek() != ")":
                raise self.error("expected ')'")
            self.take()
            return inner
        if ch in _VAR_INDEX:
            self.take()
            mono = [0, 0, 0]
            mono[_VAR_INDEX[ch]] = 1
            return {tuple(mono): Fraction(1)}
        if ch.isdigit():
            num = self.parse_nat()
            if self.peek() == "/":
                self.take()
                if not self.peek().isdigit():
                    raise self.error("expected denominator after '/'")
                den = self.parse_nat()
                if den == 0:
                    raise self.error("zero denominator")
                return {(0, 0, 0): Fraction(num, den)}
            return {(0, 0, 0): Fraction(num)}
        if ch == "":
            raise self.error("unexpected end of expression")
        raise self.error(f"unexpected character {ch!r}")

    def parse_nat(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise self.error("expected a number")
        return int(self.text[start : self.pos])


def _add(a: dict[Mono3, Fraction], b: dict[Mono3, Fraction]) -> dict[Mono3, Fraction]:
    out = dict(a)
    for mono, c in b.items():
        v = out.get(mono, Fraction(0)) + c
        if v == 0:
            out.pop(mono, None)
        else:
            out[mono] = v
    return out


def _scale(a: dict[Mono3, Fraction], c: Fraction | int) -> dict[Mono3, Fraction]:
    c = Fraction(c)
    if c == 0:
        return {}
    return {m: c * v for m, v in a.items()}


def _mul(a: dict[Mono3, Fraction], b: dict[Mono3, Fraction]) -> dict[Mono3, Fraction]:
    out: dict[Mono3, Fraction] = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
            v = out.get(m, Fraction(0)) + c1 * c2
            if v == 0:
                out.pop(m, None)
            else:
                out[m] = v
    return out


def _power(a: dict[Mono3, Fraction], n: int) -> dict[Mono3, Fraction]:
    result: dict[Mono3, Fraction] = {(0, 0, 0): Fraction(1)}
    for _ in range(n):
        result = _mul(result, a)
    return result


def parse_polynomial(text: str) -> HomogeneousPolynomial:
    """Parse and expand an expression into a homogeneous form.

    Raises :class:`PolynomialSyntaxError` on malformed input and
    :class:`NonHomogeneousError` when the expansion mixes total degrees.
    """
    expanded = _Parser(text).parse()
    degrees = {sum(mono) for mono in expanded}
    if len(degrees) > 1:
        raise NonHomogeneousError(
            f"terms of mixed degrees {sorted(degrees)} in {text!r}"
        )
    degree = degrees.pop() if degrees else 0
    return HomogeneousPolynomial(degree, expanded)


def partial_derivative(f: HomogeneousPolynomial, var: str) -> HomogeneousPolynomial:
    """Exact formal derivative of f with respect to x, y, or z."""
    if var not in _VAR_INDEX:
        raise ValueError(f"unknown variable {var!r}")
    return f.partial(var)


def dehomogenize(
    f: HomogeneousPolynomial, point: ProjectivePoint | tuple
) -> AffinePolynomial:
    """Local equation of f in an affine chart centered at a rational point.

    The chart is the last nonzero coordinate of the point; that coordinate is
    set to 1 and the point is translated to the origin, so the result vanishes
    at (0, 0) exactly when f vanishes at the point.
    """
    p = point if isinstance(point, ProjectivePoint) else ProjectivePoint.of(*point)
    coords = [Fraction(c) for c in p.coords()]
    chart = max(i for i in range(3) if coords[i] != 0)
    scale = coords[chart]
    center = [c / scale for c in coords]
    local_vars = [i for i in range(3) if i != chart]
    names = (VAR_NAMES[local_vars[0]], VAR_NAMES[local_vars[1]])

    u_shift = AffinePolynomial(
        {(1, 0): Fraction(1), (0, 0): center[local_vars[0]]}, names
    )
    v_shift = AffinePolynomial(
        {(0, 1): Fraction(1), (0, 0): center[local_vars[1]]}, names
    )
    result = AffinePolynomial({}, names)
    for mono, c in f.terms.items():
        e_u = mono[local_vars[0]]
        e_v = mono[local_vars[1]]
        term = AffinePolynomial({(0, 0): c}, names) * (u_shift**e_u) * (v_shift**e_v)
        result = result + term
    return result


# ---------------------------------------------------------------------------
# Conics


@dataclass(frozen=True)
class ConicForm:
    """A ternary quadratic form, stored by its six coefficients."""

    xx: Fraction
    yy: Fraction
    zz: Fraction
    xy: Fraction
    xz: Fraction
    yz: Fraction

    def __post_init__(self) -> None:
        for name in ("xx", "yy", "zz", "xy", "xz", "yz"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if all(
            getattr(self, name) == 0 for name in ("xx", "yy", "zz", "xy", "xz", "yz")
        ):
            raise ValueError("the zero form is not a conic")

    @classmethod
    def from_polynomial(cls, f: HomogeneousPolynomial) -> "ConicForm":
        if f.degree != 2:
            raise ValueError(f"a conic must have degree 2, got {f.degree}")
        g = f.terms.get
        return cls(
            xx=g((2, 0, 0), Fraction(0)),
            yy=g((0, 2, 0), Fraction(0)),
            zz=g((0, 0, 2), Fraction(0)),
            xy=g((1, 1, 0), Fraction(0)),
            xz=g((1, 0, 1), Fraction(0)),
            yz=g((0, 1, 1), Fraction(0)),
        )

    @classmethod
    def parse(cls, text: str) -> "ConicForm":
        return cls.from_polynomial(parse_polynomial(text))

    def polynomial(self) -> HomogeneousPolynomial:
        return HomogeneousPolynomial(
            2,
            {
                (2, 0, 0): self.xx,
                (0, 2, 0): self.yy,
                (0, 0, 2): self.zz,
                (1, 1, 0): self.xy,
                (1, 0, 1): self.xz,
                (0, 1, 1): self.yz,
            },
        )

    def matrix(self) -> list[list[Fraction]]:
        """Symmetric 3x3 matrix M with q(v) = v^T M v."""
        half = Fraction(1, 2)
        return [
            [self.xx, half * self.xy, half * self.xz],
            [half * self.xy, self.yy, half * self.yz],
            [half * self.xz, half * self.yz, self.zz],
        ]

    def determinant(self) -> Fraction:
        m = self.matrix()
        return (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )

    def evaluate(self, point: ProjectivePoint | tuple) -> Fraction:
        coords = point.coords() if isinstance(point, ProjectivePoint) else point
        return self.polynomial().evaluate(tuple(coords))

    def gradient(self, point: ProjectivePoint | tuple) -> tuple[Fraction, Fraction, Fraction]:
        coords = point.coords() if isinstance(point, ProjectivePoint) else point
        f = self.polynomial()
        return tuple(f.partial(v).evaluate(tuple(coords)) for v in VAR_NAMES)

    def is_proportional_to(self, other: "ConicForm") -> bool:
        a = (self.xx, self.yy, self.zz, self.xy, self.xz, self.yz)
        b = (other.xx, other.yy, other.zz, other.xy, other.xz, other.yz)
        ratio = None
        for u, v in zip(a, b):
            if u == 0 and v == 0:
                continue
            if u == 0 or v == 0:
                return False
            if ratio is None:
                ratio = u / v
            elif u / v != ratio:
                return False
        return True

    def __str__(self) -> str:
        return str(self.polynomial())


def conic_is_smooth(q: ConicForm) -> bool:
    """True exactly when the symmetric matrix of q has nonzero determinant."""
    return q.determinant() != 0
