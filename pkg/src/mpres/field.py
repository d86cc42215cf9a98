"""Exact scalar fields.

The rationals (``fractions.Fraction``) are the default.  A prime field can be
selected once per session with :func:`set_field`; Betti numbers over F_p may
differ from the rational ones when the homology has p-torsion-like behaviour
in the underlying integral complex.
"""

from __future__ import annotations

from fractions import Fraction


class ModP:
    """Element of F_p.  Subclassed per prime by :func:`prime_field`."""

    __slots__ = ("v",)
    p = 2

    def __init__(self, v=0):
        if isinstance(v, ModP):
            v = v.v
        elif isinstance(v, Fraction):
            v = v.numerator * pow(v.denominator, -1, self.p)
        elif isinstance(v, str):
            v = Fraction(v)
            v = v.numerator * pow(v.denominator, -1, self.p)
        self.v = v % self.p

    def _coerce(self, other):
        if isinstance(other, ModP):
            return other.v
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return type(self)(self.v + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return type(self)(self.v - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return type(self)(o - self.v)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return type(self)(self.v * o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o % self.p == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return type(self)(self.v * pow(o, -1, self.p))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return type(self)(o) / self

    def __neg__(self):
        return type(self)(-self.v)

    def __pos__(self):
        return self

    def __bool__(self):
        return self.v != 0

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return (self.v - o) % self.p == 0

    def __hash__(self):
        return hash((self.p, self.v))

    def __int__(self):
        return self.v

    def __repr__(self):
        return "%d mod %d" % (self.v, self.p)

    def __str__(self):
        # symmetric representative keeps signs readable
        v = self.v
        if v > self.p // 2:
            v -= self.p
        return str(v)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


_prime_classes: dict[int, type] = {}


def prime_field(p: int) -> type:
    """The element class of F_p."""
    if not _is_prime(p):
        raise ValueError("%d is not prime" % p)
    if p not in _prime_classes:
        _prime_classes[p] = type("F%d" % p, (ModP,), {"__slots__": (), "p": p})
    return _prime_classes[p]


class Field:
    """Handle on the session field: a name and an element constructor."""

    def __init__(self, name: str, element: type):
        self.name = name
        self.element = element

    def __call__(self, x) -> object:
        if isinstance(x, self.element):
            return x
        return self.element(x)

    @property
    def characteristic(self) -> int:
        return 0 if self.element is Fraction else self.element.p

    def __repr__(self):
        return "Field(%s)" % self.name


RATIONAL = Field("rational", Fraction)

_current = RATIONAL


def parse_field(spec: str) -> Field:
    """Parse ``rational`` or ``fp:<prime>``."""
    if spec in ("rational", "Q", "QQ"):
        return RATIONAL
    if spec.startswith("fp:"):
        p = int(spec[3:])
        return Field(spec, prime_field(p))
    raise ValueError("unknown field %r (expected 'rational' or 'fp:<prime>')" % spec)


def set_field(field: Field | str) -> Field:
    """Select the field for the session.  Objects built under another field
    must not be mixed with new ones."""
    global _current
    if isinstance(field, str):
        field = parse_field(field)
    _current = field
    return field


def get_field() -> Field:
    return _current


def K(x) -> object:
    """Coerce ``x`` into the session field."""
    return _current(x)


def format_scalar(x) -> str:
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return str(x.numerator)
        return "%d/%d" % (x.numerator, x.denominator)
    return str(x)
