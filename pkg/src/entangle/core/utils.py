import itertools
import math

import numpy as np


def total_dim(dims):
    """各方维数之积"""
    return int(math.prod(dims))


def digits_to_index(digits, dims):
    """
    混合进制：把每一方的基矢下标转换成整体下标。
    party 0 为最高位 (big-endian)，与 a|000> + b|001> + ... 的排列一致。
    """
    index = 0
    for digit, d in zip(digits, dims):
        index = index * d + int(digit)
    return index


def index_to_digits(index, dims):
    """digits_to_index 的逆运算"""
    digits = []
    for d in reversed(dims):
        index, digit = divmod(index, d)
        digits.append(digit)
    return tuple(reversed(digits))


def matricize(amps, dims, focus):
    """
    把振幅向量整理成 d_A × d_B 的矩阵。

    行对应 focus 一侧 (按 party 升序的混合进制)，列对应补集一侧。
    partial_trace 和 state_matrix 都基于这个函数。

    :param amps: 长度为 ∏ dims 的复振幅
    :param dims: 各方维数
    :param focus: focus 一侧的 party 下标 (可迭代)
    :return: complex ndarray, shape (d_A, d_B)
    """
    focus = sorted(focus)
    rest = [k for k in range(len(dims)) if k not in focus]
    tensor = np.asarray(amps).reshape(dims)
    tensor = np.transpose(tensor, axes=focus + rest)
    d_a = total_dim([dims[k] for k in focus])
    d_b = total_dim([dims[k] for k in rest])
    return tensor.reshape(d_a, d_b)


def proper_subsets(n):
    """所有非空真子集，按大小再按字典序"""
    for size in range(1, n):
        for combo in itertools.combinations(range(n), size):
            yield frozenset(combo)
