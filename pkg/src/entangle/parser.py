"""
ket 表达式解析与格式化。

文法 (空白不敏感):

    expr    := ['+'|'-'] term (('+'|'-') term)*
    term    := unary (('*' | '/' | <并列>) unary)*
    unary   := ('+'|'-') unary | primary
    primary := NUMBER | 'i' | 'sqrt' '(' expr ')' | '(' expr ')' | KET
    KET     := '|' digit+ '>'

并列 (隐式乘法) 让 `0.6|0>`、`(1+i)|0>`、`1/sqrt(2)|00>` 都能直接写。
求值时每个子表达式要么是标量，要么是 ket 的线性组合；两个 ket 相乘
(张量积) 不支持。
"""
import cmath
import logging
import re
from dataclasses import dataclass

import numpy as np

from configs import numerics
from .core.errors import (
    KetSyntaxError, InconsistentKetLength, DigitExceedsDimension, InvalidDimensions,
)
from .core.state import DEFAULT_TOLERANCES, check_dims, make_state
from .core.utils import digits_to_index, index_to_digits, total_dim

logger = logging.getLogger(__name__)


# --- 词法分析 ---

@dataclass(frozen=True)
class Token:
    kind: str  # NUMBER, I, SQRT, KET, OP, LPAREN, RPAREN, END
    text: str
    position: int
    value: object = None


_NUMBER_RE = re.compile(r"\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?")
_KET_RE = re.compile(r"\|([^>|]*)>")


def tokenize(text):
    """把输入切成 Token 列表，最后追加 END。遇到无法识别的字符立即报错。"""
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        c = text[pos]
        if c.isspace():
            pos += 1
            continue
        if c.isdigit() or (c == "." and pos + 1 < n and text[pos + 1].isdigit()):
            match = _NUMBER_RE.match(text, pos)
            tokens.append(Token("NUMBER", match.group(), pos, float(match.group())))
            pos = match.end()
            continue
        if c == "|":
            match = _KET_RE.match(text, pos)
            if not match:
                raise KetSyntaxError("unterminated ket, expected '>'", pos)
            label = match.group(1).strip()
            if not label:
                raise KetSyntaxError("empty ket label", pos)
            if not label.isdigit() or not label.isascii():
                raise KetSyntaxError(f"ket label {label!r} must contain only digits", pos)
            tokens.append(Token("KET", match.group(), pos, label))
            pos = match.end()
            continue
        if text.startswith("sqrt", pos):
            tokens.append(Token("SQRT", "sqrt", pos))
            pos += 4
            continue
        if c == "i" and not (pos + 1 < n and text[pos + 1].isalpha()):
            tokens.append(Token("I", "i", pos, 1j))
            pos += 1
            continue
        if c in "+-*/":
            tokens.append(Token("OP", c, pos))
            pos += 1
            continue
        if c == "(":
            tokens.append(Token("LPAREN", c, pos))
            pos += 1
            continue
        if c == ")":
            tokens.append(Token("RPAREN", c, pos))
            pos += 1
            continue
        raise KetSyntaxError(f"unexpected character {c!r}", pos)
    tokens.append(Token("END", "", n))
    return tokens


# --- 语法树 ---

@dataclass(frozen=True)
class KetTerm:
    """系数 × ket 标签；position 为该 ket 在原文中的位置"""
    coefficient: complex
    label: str
    position: int


@dataclass(frozen=True)
class KetExpr:
    terms: tuple

    @property
    def label_length(self):
        return len(self.terms[0].label) if self.terms else 0


@dataclass(frozen=True)
class _Scalar:
    value: complex


@dataclass(frozen=True)
class _Kets:
    # label -> (系数, 首次出现位置)，保持出现顺序
    terms: tuple

    def scaled(self, factor):
        return _Kets(tuple((label, c * factor, p) for label, c, p in self.terms))


def _add(left, right, sign, token):
    if isinstance(left, _Scalar) and isinstance(right, _Scalar):
        return _Scalar(left.value + sign * right.value)
    if isinstance(left, _Kets) and isinstance(right, _Kets):
        return _Kets(left.terms + right.scaled(sign).terms)
    raise KetSyntaxError("cannot add a scalar and a ket", token.position)


def _mul(left, right, token):
    if isinstance(left, _Scalar) and isinstance(right, _Scalar):
        return _Scalar(left.value * right.value)
    if isinstance(left, _Scalar):
        return right.scaled(left.value)
    if isinstance(right, _Scalar):
        return left.scaled(right.value)
    raise KetSyntaxError("ket juxtaposition (tensor product) is not supported", token.position)


def _div(left, right, token):
    if isinstance(right, _Kets):
        raise KetSyntaxError("cannot divide by a ket", token.position)
    if right.value == 0:
        raise KetSyntaxError("division by zero", token.position)
    if isinstance(left, _Scalar):
        return _Scalar(left.value / right.value)
    return left.scaled(1 / right.value)


class _Parser:
    """递归下降解析器，直接在解析过程中求值"""

    _PRIMARY_START = {"NUMBER", "I", "SQRT", "LPAREN", "KET"}

    def __init__(self, text):
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def current(self):
        return self.tokens[self.index]

    def advance(self):
        token = self.tokens[self.index]
        self.index += 1
        return token

    def expect(self, kind, what):
        token = self.current
        if token.kind != kind:
            found = "end of input" if token.kind == "END" else repr(token.text)
            raise KetSyntaxError(f"expected {what}, found {found}", token.position)
        return self.advance()

    def parse(self):
        if self.current.kind == "END":
            raise KetSyntaxError("empty expression", 0)
        value = self.expr()
        token = self.current
        if token.kind != "END":
            raise KetSyntaxError(f"unexpected {token.text!r}", token.position)
        return value

    def expr(self):
        value = self.term()
        while self.current.kind == "OP" and self.current.text in "+-":
            op = self.advance()
            right = self.term()
            value = _add(value, right, 1 if op.text == "+" else -1, op)
        return value

    def term(self):
        value = self.unary()
        while True:
            token = self.current
            if token.kind == "OP" and token.text == "*":
                self.advance()
                value = _mul(value, self.unary(), token)
            elif token.kind == "OP" and token.text == "/":
                self.advance()
                value = _div(value, self.unary(), token)
            elif token.kind in self._PRIMARY_START:
                value = _mul(value, self.unary(), token)
            else:
                return value

    def unary(self):
        token = self.current
        if token.kind == "OP" and token.text in "+-":
            self.advance()
            value = self.unary()
            if token.text == "-":
                return _mul(_Scalar(-1), value, token)
            return value
        return self.primary()

    def primary(self):
        token = self.current
        if token.kind == "NUMBER":
            self.advance()
            return _Scalar(complex(token.value))
        if token.kind == "I":
            self.advance()
            return _Scalar(1j)
        if token.kind == "KET":
            self.advance()
            return _Kets(((token.value, 1 + 0j, token.position),))
        if token.kind == "SQRT":
            self.advance()
            self.expect("LPAREN", "'(' after sqrt")
            argument = self.expr()
            self.expect("RPAREN", "')'")
            if isinstance(argument, _Kets):
                raise KetSyntaxError("sqrt of a ket", token.position)
            return _Scalar(cmath.sqrt(argument.value))
        if token.kind == "LPAREN":
            self.advance()
            value = self.expr()
            self.expect("RPAREN", "')'")
            return value
        found = "end of input" if token.kind == "END" else repr(token.text)
        raise KetSyntaxError(f"expected a number, 'i', sqrt(...), '(' or a ket, found {found}",
                             token.position)


def parse_ket_terms(text):
    """
    解析为 KetExpr (尚未组装成态)。

    :raises KetSyntaxError: 语法错误，带位置
    :raises InconsistentKetLength: ket 标签长度不一致
    """
    value = _Parser(text).parse()
    if isinstance(value, _Scalar):
        raise KetSyntaxError("expression has no ket", 0)
    terms = tuple(KetTerm(c, label, p) for label, c, p in value.terms)
    length = len(terms[0].label)
    for term in terms[1:]:
        if len(term.label) != length:
            raise InconsistentKetLength(
                f"ket |{term.label}> has {len(term.label)} digits, expected {length}",
                term.position)
    return KetExpr(terms)


def _resolve_dims(expr, dims_hint):
    length = expr.label_length
    if dims_hint is None:
        # 推断：每个位置取 1 + 出现过的最大数字，至少为 2
        return tuple(max(2, 1 + max(int(t.label[k]) for t in expr.terms)) for k in range(length))
    dims = check_dims(dims_hint)
    if len(dims) != length:
        raise InvalidDimensions(f"dims hint {list(dims)} has {len(dims)} parties, kets have {length}")
    for term in expr.terms:
        for k, (digit, d) in enumerate(zip(term.label, dims)):
            if int(digit) >= d:
                raise DigitExceedsDimension(
                    f"digit {digit} of |{term.label}> exceeds local dimension {d} of party {k}",
                    term.position + 1 + k)
    return dims


def parse_ket_expr(text, dims_hint=None, normalize=False, tolerances=DEFAULT_TOLERANCES):
    """
    解析 ket 表达式，返回 PureState。

    :param text: 如 "(|00> + |11>)/sqrt(2)"
    :param dims_hint: 各方维数；缺省时由出现的数字推断
    :param normalize: True 时归一化；否则要求输入本身归一
    """
    if text is None or not str(text).strip():
        raise KetSyntaxError("empty expression", 0)
    expr = parse_ket_terms(str(text))
    dims = check_dims(_resolve_dims(expr, dims_hint))
    amps = np.zeros(total_dim(dims), dtype=complex)
    for term in expr.terms:
        amps[digits_to_index(term.label, dims)] += term.coefficient
    state = make_state(dims, amps, normalize=normalize, tolerances=tolerances)
    logger.debug("parsed %r -> dims %s", text, list(dims))
    return state


def _format_coefficient(c, precision):
    re_part, im_part = c.real, c.imag
    fmt = f".{precision}g"
    if im_part == 0:
        return format(re_part, fmt)
    if re_part == 0:
        return f"{format(im_part, fmt)}i"
    sign = "+" if im_part >= 0 else "-"
    return f"({format(re_part, fmt)}{sign}{format(abs(im_part), fmt)}i)"


def format_state(state, threshold=numerics.FORMAT_THRESHOLD, precision=numerics.TEXT_DIGITS):
    """
    把态写回 ket 文本，按基矢下标升序，只保留 |amp| > threshold 的项。

    precision=7 供阅读；precision=17 时 parse_ket_expr 可以无损读回。
    """
    parts = []
    for index, amp in enumerate(state.amps):
        if abs(amp) <= threshold:
            continue
        label = "".join(str(k) for k in index_to_digits(index, state.dims))
        # 负实数单独处理成减号
        if amp.imag == 0 and amp.real < 0:
            coeff, sign = _format_coefficient(complex(-amp.real, 0), precision), "-"
        else:
            coeff, sign = _format_coefficient(complex(amp), precision), "+"
        parts.append((sign, f"{coeff}|{label}>"))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text
