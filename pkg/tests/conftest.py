import os

from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("thorough", parent=settings.get_profile("default"), max_examples=500)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


class Laurent:
    """Integer Laurent polynomial in one formal variable, stored as {exponent: coeff}."""

    def __init__(self, terms=None):
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def x(cls, k=1):
        return cls({k: 1})

    def __add__(self, other):
        other = _lift(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return Laurent(out)

    __radd__ = __add__

    def __neg__(self):
        return Laurent({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        other = _lift(other)
        out = {}
        for a, u in self.terms.items():
            for b, v in other.terms.items():
                out[a + b] = out.get(a + b, 0) + u * v
        return Laurent(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return self.terms == _lift(other).terms

    def __repr__(self):
        return f"Laurent({self.terms})"


def _lift(x):
    return x if isinstance(x, Laurent) else Laurent({0: x})
