"""
LinComb is a dictionary of the form basis -> Fraction where a basis element is
a tuple of forests (a forest, a tensor pair or a tensor triple; the empty
tuple is the scalar basis). Zero coefficients are removed automatically.

Besides addition and scalar multiplication it multiplies componentwise,
which is the algebra structure on tensor powers of the free commutative
algebra on trees.
"""

from fractions import Fraction
from typing import Callable, Iterable, Tuple

from operadic_incidence.combinat import Forest

__all__ = ['LinComb']

Basis = Tuple[Forest, ...]


class LinComb(dict):
    def __init__(self, data=()):
        super(LinComb, self).__init__()
        if isinstance(data, dict):
            data = data.items()
        self.__iadd__(data)

    @classmethod
    def basis(cls, *factors: Forest, coeff=1) -> 'LinComb':
        return cls(((tuple(factors), coeff),))

    @classmethod
    def scalar(cls, value) -> 'LinComb':
        return cls([((), value)]) if value else cls()

    @classmethod
    def unit(cls, degree: int) -> 'LinComb':
        """The unit ``1 ⊗ ... ⊗ 1`` of the ``degree``-fold tensor power."""
        return cls.basis(*(Forest(),) * degree)

    def __getitem__(self, key):
        return self.get(key, Fraction(0))

    @property
    def degree(self):
        """Tensor length of the basis, ``None`` for the zero combination."""
        for key in self:
            return len(key)
        return None

    def __iadd__(self, other):
        if isinstance(other, dict):
            other = other.items()
        for k, x in other:
            if x == 0:
                continue
            if not isinstance(x, Fraction):
                x = Fraction(x)
            x2 = self.get(k, 0) + x
            if x2 == 0:
                del self[k]
            else:
                self[k] = x2
        return self

    def __add__(self, other):
        res = LinComb(self)
        res.__iadd__(other)
        return res

    def __neg__(self):
        return LinComb((k, -x) for k, x in self.items())

    def __isub__(self, other):
        self.__iadd__((k, -x) for k, x in other.items())
        return self

    def __sub__(self, other):
        res = LinComb(self)
        res.__isub__(other)
        return res

    def __mul__(self, other):
        if not isinstance(other, LinComb):
            if other == 0:
                return LinComb()
            return LinComb((k, other * x) for k, x in self.items())
        res = LinComb()
        for k1, x1 in self.items():
            for k2, x2 in other.items():
                if len(k1) != len(k2):
                    raise ValueError("cannot multiply tensors of lengths {0} and {1}".format(len(k1), len(k2)))
                res.__iadd__((((tuple(a * b for a, b in zip(k1, k2))), x1 * x2),))
        return res

    def __rmul__(self, n):
        return self.__mul__(n)

    def map_factor(self, position: int, fn: Callable[[Forest], 'LinComb']) -> 'LinComb':
        """
        Applies a linear map to one tensor factor: the factor at ``position``
        is replaced by the basis of ``fn`` of it (which may have any length,
        zero for a scalar-valued map).
        """
        res = LinComb()
        for key, x in self.items():
            image = fn(key[position])
            res.__iadd__(((key[:position] + k + key[position + 1:], x * y) for k, y in image.items()))
        return res

    def map_basis(self, fn: Callable[[Basis], Basis]) -> 'LinComb':
        res = LinComb()
        for key, x in self.items():
            res.__iadd__(((fn(key), x),))
        return res

    def sorted_items(self) -> Iterable:
        return sorted(self.items(), key=lambda item: tuple(f.key for f in item[0]))

    def __str__(self):
        if not self:
            return '0'
        return ' + '.join('{0} · {1}'.format(x, ' ⊗ '.join(str(f) for f in key)) if key else str(x)
                          for key, x in self.sorted_items())

    def __repr__(self):
        return 'LinComb({0})'.format(self)
