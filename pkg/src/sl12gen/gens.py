"""The named elements of the SL_12(q) generation argument.

Two generator pairs live here: the standard pair (x, y) used for p != 5
and the tilde pair (x~, y~) used for p = 5, together with the words built
from them and the 5 x 5 involution w = I_5 - 2E_{5,5} + tE_{5,4}.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ff import FieldElement, FieldSpec, generates_field
from .matq import (
    Matrix,
    block_diag,
    commutator,
    conjugate,
    elementary,
    identity,
    perm_matrix,
)

N = 12

Y_CYCLES = [(1, 2, 3), (4, 5, 6), (7, 8, 9), (10, 11, 12)]

# the 3 x 3 block of x~ on <e_2, e_3, e_4>, entries over F_5
X3_ROWS = [[3, 3, 2], [2, 3, 1], [3, 1, 3]]

# words kept as data so reports can show the formula that was evaluated
WORDS = {
    "c": "[x,y] = x^-1 y^-1 x y",
    "gamma": "c^e, e = gamma_exponent(p)",
    "delta": "gamma^y",
    "eta1": "(gamma^4 delta^3 gamma^2 delta^2)^2",
    "eta2": "(gamma^4 delta^3 gamma^2 delta^2 gamma^2 delta^2)^2",
    "eta3": "(delta gamma^2 delta gamma^2 delta gamma^3 delta^4 gamma^2)^2",
    "g": "(e1,e4,e9)",
    "g_x": "g^x",
    "c_t": "[x~,y~]",
    "gamma_t": "c_t^12",
    "delta_t": "gamma_t^(y~^2)",
    "u1": "gamma_t delta_t^2",
    "u2": "gamma_t delta_t gamma_t^3 delta_t^3",
    "g1": "diag(1, x3, I_8)",
    "g2": "(e1,e2,e3,e4,e5,e6,e7)",
    "g3": "(e6,e7,e8)",
    "g3c": "g3^(y~ g1 x~)",
}

T_POLICY = (
    "default t: scan integer residues 0, 1, ..., p-1, then the basis monomials "
    "u, u^2, ..., u^(a-1) of the extension, then every remaining element in code "
    "order; take the first t with t != 0, t != 2 and F_p(t) = F_q"
)


class GeneratorError(ValueError):
    pass


class WrongCharacteristic(GeneratorError):
    pass


class Unsupported(GeneratorError):
    pass


class InvalidParameter(GeneratorError):
    pass


def _from_images(spec: FieldSpec, images: dict[int, dict[int, object]]) -> Matrix:
    """Assemble a 12 x 12 matrix from {i: {j: coeff}} meaning e_i -> sum coeff e_j.

    Every basis vector must be assigned exactly once.
    """
    if sorted(images) != list(range(1, N + 1)):
        missing = sorted(set(range(1, N + 1)) - set(images))
        raise GeneratorError(f"image list is not total, missing {missing}")
    rows = [[0] * N for _ in range(N)]
    for i, img in images.items():
        for j, c in img.items():
            rows[i - 1][j - 1] = spec(c)
    return Matrix.from_rows(spec, rows)


def build_y(spec: FieldSpec) -> Matrix:
    return perm_matrix(spec, N, Y_CYCLES)


def _assign(images, i, img):
    if i in images:
        raise GeneratorError(f"e_{i} assigned twice")
    images[i] = img


def build_x(spec: FieldSpec, t) -> Matrix:
    t = spec(t)
    images: dict[int, dict] = {}
    # (a) e_1 <-> e_8
    _assign(images, 1, {8: 1})
    _assign(images, 8, {1: 1})
    # (b)
    _assign(images, 2, {2: -1})
    _assign(images, 5, {5: 1})
    # (c) e_{3i} <-> e_{3i+1}, i = 1, 2, 3
    for i in (1, 2, 3):
        _assign(images, 3 * i, {3 * i + 1: 1})
        _assign(images, 3 * i + 1, {3 * i: 1})
    # (d) rows of [[1, 0], [t, -1]] on <e_11, e_12>
    _assign(images, 11, {11: 1})
    _assign(images, 12, {11: t, 12: -1})
    return _from_images(spec, images)


def build_x_tilde(spec: FieldSpec, t) -> Matrix:
    if spec.p != 5:
        raise WrongCharacteristic(f"the tilde generator needs p = 5, got p = {spec.p}")
    t = spec(t)
    images: dict[int, dict] = {}
    # (a)
    _assign(images, 1, {1: -1})
    _assign(images, 5, {5: 1})
    _assign(images, 8, {8: 1})
    # (b) i = 2, 3
    for i in (2, 3):
        _assign(images, 3 * i, {3 * i + 1: 1})
        _assign(images, 3 * i + 1, {3 * i: 1})
    # (c) x3 on <e_2, e_3, e_4>
    for r, row in enumerate(X3_ROWS):
        _assign(images, 2 + r, {2 + c: v for c, v in enumerate(row)})
    # (d)
    _assign(images, 11, {11: 1})
    _assign(images, 12, {11: t, 12: -1})
    return _from_images(spec, images)


def build_x3(spec: FieldSpec) -> Matrix:
    return Matrix.from_rows(spec, X3_ROWS)


def gamma_exponent(p: int) -> int:
    if p == 2:
        return 12
    r = p % 10
    if r == 1:
        return 12 * p
    if r == 3:
        return 24 * p
    if r == 7:
        return 6 * p
    if r == 9:
        return 18 * p
    raise Unsupported(f"no exponent rule for p = {p}")


@dataclass(frozen=True)
class GeneratorPair:
    x: Matrix
    y: Matrix
    t: FieldElement
    variant: str
    spec: FieldSpec

    def __post_init__(self):
        if self.variant not in ("standard", "tilde"):
            raise ValueError(f"unknown variant {self.variant!r}")


def make_pair(spec: FieldSpec, t, variant: str = "standard", check: bool = True) -> GeneratorPair:
    """Build (x, y) or (x~, y~); with ``check`` assert orders 2, 3 and det 1."""
    t = spec(t)
    x = build_x(spec, t) if variant == "standard" else build_x_tilde(spec, t)
    pair = GeneratorPair(x, build_y(spec), t, variant, spec)
    if check:
        one = spec.one
        if not (x @ x).is_identity() or x.is_identity():
            raise GeneratorError("x does not have order 2")
        y = pair.y
        if not (y @ y @ y).is_identity() or y.is_identity():
            raise GeneratorError("y does not have order 3")
        if x.det() != one or y.det() != one:
            raise GeneratorError("generator outside SL_12")
    return pair


def build_words(pair: GeneratorPair) -> dict[str, Matrix]:
    spec = pair.spec
    x, y = pair.x, pair.y
    words: dict[str, Matrix] = {}
    if pair.variant == "standard":
        c = commutator(x, y)
        gamma = c ** gamma_exponent(spec.p)
        delta = conjugate(gamma, y)
        G, D = gamma, delta
        words.update(c=c, gamma=gamma, delta=delta)
        words["eta1"] = (G**4 @ D**3 @ G**2 @ D**2) ** 2
        words["eta2"] = (G**4 @ D**3 @ G**2 @ D**2 @ G**2 @ D**2) ** 2
        words["eta3"] = (D @ G**2 @ D @ G**2 @ D @ G**3 @ D**4 @ G**2) ** 2
        g = perm_matrix(spec, N, [(1, 4, 9)])
        words["g"] = g
        words["g_x"] = conjugate(g, x)
    else:
        c = commutator(x, y)
        gamma = c**12
        delta = conjugate(gamma, y @ y)
        words.update(c_t=c, gamma_t=gamma, delta_t=delta)
        words["u1"] = gamma @ delta**2
        words["u2"] = gamma @ delta @ gamma**3 @ delta**3
        g1 = block_diag(identity(spec, 1), build_x3(spec), identity(spec, 8))
        g3 = perm_matrix(spec, N, [(6, 7, 8)])
        words["g1"] = g1
        words["g2"] = perm_matrix(spec, N, [(1, 2, 3, 4, 5, 6, 7)])
        words["g3"] = g3
        words["g3c"] = conjugate(g3, y @ g1 @ x)
    return words


def validate_t(spec: FieldSpec, t) -> list[str]:
    """Names of the violated conditions among t != 0, t != 2, F_p(t) = F_q."""
    t = spec(t)
    bad = []
    if t == spec.zero:
        bad.append("t != 0")
    if t == spec(2):
        bad.append("t != 2")
    if not generates_field(t):
        bad.append("F_p(t) = F_q")
    return bad


def build_w_lemma5(spec: FieldSpec, t) -> Matrix:
    """w = I_5 - 2 E_{5,5} + t E_{5,4}; requires t != 0, 2 and F_p(t) = F_q."""
    bad = validate_t(spec, t)
    if bad:
        raise InvalidParameter(f"t = {spec(t)!r} violates {', '.join(bad)}")
    return w_matrix(spec, t)


def w_matrix(spec: FieldSpec, t) -> Matrix:
    """The same involution without the hypothesis check (exploratory use)."""
    t = spec(t)
    return (
        identity(spec, 5)
        - elementary(spec, 5, 5, 5).scale(2)
        + elementary(spec, 5, 5, 4).scale(t)
    )


def build_g_prop(spec: FieldSpec, variant: str = "standard") -> Matrix:
    """The double transposition g with w = g x (standard) or w = g x~ (tilde)."""
    if variant == "standard":
        return perm_matrix(spec, N, [(1, 8), (9, 10)])
    return perm_matrix(spec, N, [(6, 7), (9, 10)])


def candidate_ts(spec: FieldSpec):
    """Field elements in the order of the default t policy (without filtering)."""
    seen = set()
    for r in range(spec.p):
        e = spec(r)
        seen.add(e)
        yield e
    u = spec.gen()
    for k in range(1, spec.a):
        e = u**k
        if e not in seen:
            seen.add(e)
            yield e
    for e in spec.elements():
        if e not in seen:
            yield e


def valid_ts(spec: FieldSpec):
    for t in candidate_ts(spec):
        if not validate_t(spec, t):
            yield t


def default_t(spec: FieldSpec) -> FieldElement:
    for t in valid_ts(spec):
        return t
    raise InvalidParameter(f"no valid t in {spec!r}")
