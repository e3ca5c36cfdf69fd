import logging
import re
from dataclasses import dataclass
from enum import Enum

import numpy as np

from configs import numerics
from .errors import InvalidDimensions, InvalidParameters, UnknownName
from .state import PureState, check_dims
from .utils import digits_to_index, total_dim

logger = logging.getLogger(__name__)


class StateKind(Enum):
    PHI_PLUS = "PhiPlus"
    PHI_MINUS = "PhiMinus"
    PSI_PLUS = "PsiPlus"
    PSI_MINUS = "PsiMinus"
    GHZ = "GHZ"
    W3 = "W3"
    PRODUCT_BASIS = "ProductBasis"


_BELL_KINDS = (StateKind.PHI_PLUS, StateKind.PHI_MINUS, StateKind.PSI_PLUS, StateKind.PSI_MINUS)

_NAME_RE = re.compile(r"^\s*([A-Za-z]+[0-9]*)\s*(?:\((.*)\))?\s*$")


@dataclass(frozen=True)
class NamedState:
    """
    目录中的命名态。

    - PhiPlus / PhiMinus / PsiPlus / PsiMinus: Bell 态
    - GHZ(n, d): (|0...0> + |1...1> + ... + |d-1...d-1>)/sqrt(d)
    - W3: (|001> + |010> + |100>)/sqrt(3)
    - ProductBasis(dims, digits): 计算基矢 |k1 k2 ... kn>
    """
    kind: StateKind
    n: int = 3
    d: int = 2
    dims: tuple = ()
    digits: tuple = ()

    def __post_init__(self):
        if self.kind is StateKind.GHZ and (self.n < 2 or self.d < 2):
            raise InvalidParameters(f"GHZ needs n >= 2 and d >= 2, got n={self.n}, d={self.d}")
        if self.kind is StateKind.PRODUCT_BASIS:
            if not self.dims or len(self.dims) != len(self.digits):
                raise InvalidParameters("ProductBasis needs one digit per local dimension")
            if any(d < 2 for d in self.dims):
                raise InvalidParameters(f"ProductBasis dims must be >= 2, got {list(self.dims)}")
            if any(not 0 <= k < d for k, d in zip(self.digits, self.dims)):
                raise InvalidParameters(
                    f"ProductBasis digits {list(self.digits)} out of range for dims {list(self.dims)}")
        if self.kind is StateKind.GHZ and (self.n >= numerics.MAX_TOTAL_DIM.bit_length()
                                            or self.d ** self.n > numerics.MAX_TOTAL_DIM):
            raise InvalidParameters(
                f"GHZ({self.n},{self.d}) exceeds the total dimension limit {numerics.MAX_TOTAL_DIM}")
        if self.kind is StateKind.PRODUCT_BASIS:
            try:
                check_dims(self.dims)
            except InvalidDimensions as e:
                raise InvalidParameters(e.message)

    def __str__(self):
        if self.kind is StateKind.GHZ:
            return f"GHZ({self.n},{self.d})"
        if self.kind is StateKind.PRODUCT_BASIS:
            dims = ",".join(str(d) for d in self.dims)
            digits = ",".join(str(k) for k in self.digits)
            return f"ProductBasis({dims}:{digits})"
        return self.kind.value

    @classmethod
    def parse(cls, text):
        """
        解析目录名，如 'PhiPlus', 'GHZ', 'GHZ(3,3)', 'W3', 'ProductBasis(2,2:0,1)'。
        名称大小写不敏感。
        """
        match = _NAME_RE.match(text)
        if not match:
            raise UnknownName(f"unknown catalog name {text!r}")
        name, args = match.group(1), match.group(2)
        kind = next((k for k in StateKind if k.value.lower() == name.lower()), None)
        if kind is None:
            raise UnknownName(f"unknown catalog name {text!r}; known: {', '.join(CATALOG_NAMES)}")
        try:
            if kind is StateKind.GHZ:
                if args is None:
                    return cls(kind)
                n, d = (int(x) for x in args.split(","))
                return cls(kind, n=n, d=d)
            if kind is StateKind.PRODUCT_BASIS:
                dims_text, _, digits_text = (args or "").partition(":")
                dims = tuple(int(x) for x in dims_text.split(","))
                digits = tuple(int(x) for x in digits_text.split(","))
                return cls(kind, dims=dims, digits=digits)
        except ValueError as e:
            if isinstance(e, InvalidParameters):
                raise
            raise InvalidParameters(f"bad parameters in catalog name {text!r}")
        if args is not None:
            raise InvalidParameters(f"{kind.value} takes no parameters")
        return cls(kind)


# 常用的 8 个目录名 (catalog list 的输出)
CATALOG_NAMES = [
    "PhiPlus", "PhiMinus", "PsiPlus", "PsiMinus",
    "GHZ(3,2)", "GHZ(3,3)", "W3", "ProductBasis(2,2,2:0,0,0)",
]


def catalog(name):
    """
    按名称返回目录中的态 (已归一化)。

    :param name: NamedState 或可被 NamedState.parse 解析的字符串
    """
    if isinstance(name, str):
        name = NamedState.parse(name)
    kind = name.kind
    s = 1 / np.sqrt(2)

    if kind in _BELL_KINDS:
        amps = {
            StateKind.PHI_PLUS: (s, 0, 0, s),
            StateKind.PHI_MINUS: (s, 0, 0, -s),
            StateKind.PSI_PLUS: (0, s, s, 0),
            StateKind.PSI_MINUS: (0, s, -s, 0),
        }[kind]
        return PureState((2, 2), amps)

    if kind is StateKind.GHZ:
        dims = (name.d,) * name.n
        amps = np.zeros(total_dim(dims), dtype=complex)
        for k in range(name.d):
            amps[digits_to_index((k,) * name.n, dims)] = 1 / np.sqrt(name.d)
        return PureState(dims, amps)

    if kind is StateKind.W3:
        amps = np.zeros(8, dtype=complex)
        amps[[1, 2, 4]] = 1 / np.sqrt(3)
        return PureState((2, 2, 2), amps)

    # ProductBasis
    amps = np.zeros(total_dim(name.dims), dtype=complex)
    amps[digits_to_index(name.digits, name.dims)] = 1.0
    return PureState(name.dims, amps)
