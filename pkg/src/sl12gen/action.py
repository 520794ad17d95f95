"""Finite group actions, stabilizer chains and normal closures.

Groups are handled through the action of their elements on a finite set of
integer-labelled points:

* ``PointSpace(m)`` -- permutations of {0, ..., m-1};
* ``VectorSpace(spec, n)`` -- matrices over F_q acting on the q^n - 1
  nonzero row vectors of F_q^n (the zero vector is left out).

Engine elements are raw numpy arrays (a permutation image array, or the
F_p-linear form of a matrix); ``space.element`` converts ``Permutation`` and
``Matrix`` objects.  Products follow the right-action convention used
everywhere in the package: ``pt^(gh) = (pt^g)^h``.

Orders are exact Python integers.  A completed chain is certified in one of
two ways, recorded in ``StabilizerChain.certificate``:

* ``"schreier-generators"`` -- every Schreier generator at every level sifts
  to the identity, so the chain is a base and strong generating set;
* ``"order-bound"`` -- the product of the orbit lengths (always a lower bound
  for the order of the group generated by the strong generators) reached an
  upper bound supplied by the caller, so both are equal.
"""

from __future__ import annotations

import logging
import math
import os
import random
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from .ff import FieldSpec
from .matq import Matrix, _inverse_mod_p
from .perm import Permutation

logger = logging.getLogger(__name__)

DEFAULT_GUARD = 2**20
GUARD_ENV = "SL12GEN_POINT_GUARD"


class ActionError(RuntimeError):
    pass


class SpaceTooLarge(ActionError):
    def __init__(self, size, guard):
        super().__init__(f"{size} points exceeds the point guard {guard}")
        self.size = size
        self.guard = guard


class DepthExceeded(ActionError):
    pass


def point_guard(override: int | None = None) -> int:
    if override is not None:
        return int(override)
    env = os.environ.get(GUARD_ENV)
    return int(env) if env else DEFAULT_GUARD


# ---------------------------------------------------------------------------
# action spaces


class ActionSpace:
    """Interface shared by the concrete spaces."""

    size: int
    kind: str
    base_limit: int

    def identity(self): ...

    def mul(self, a, b): ...

    def inv(self, a): ...

    def is_identity(self, a) -> bool: ...

    def image(self, a, pt: int) -> int: ...

    def images(self, a, pts: np.ndarray) -> np.ndarray: ...

    def first_moved(self, a) -> int | None: ...

    def element(self, obj): ...

    def key(self, a) -> bytes:
        return np.ascontiguousarray(a).tobytes()

    def perm(self, a) -> np.ndarray:
        return self.images(a, np.arange(self.size, dtype=np.int64))

    # batched operations on stacks of elements (leading axis = batch)
    def batch(self, elems):
        return np.stack(elems)

    def batch_mul(self, A, B): ...

    def batch_image(self, G, pt: int) -> np.ndarray: ...

    def batch_is_identity(self, G) -> np.ndarray: ...

    def element_entries(self) -> int: ...


class PointSpace(ActionSpace):
    kind = "points"
    batch_dtype = np.int64

    def __init__(self, m: int):
        self.size = m
        self.base_limit = m
        self._id = np.arange(m, dtype=np.int64)

    def identity(self):
        return self._id.copy()

    def mul(self, a, b):
        return b[a]

    def inv(self, a):
        out = np.empty_like(a)
        out[a] = self._id
        return out

    def is_identity(self, a) -> bool:
        return bool(np.array_equal(a, self._id))

    def image(self, a, pt):
        return int(a[pt])

    def images(self, a, pts):
        return a[pts]

    def first_moved(self, a):
        nz = np.nonzero(a != self._id)[0]
        return int(nz[0]) if nz.size else None

    def element(self, obj):
        if isinstance(obj, Permutation):
            if obj.degree != self.size:
                raise ValueError(f"permutation of degree {obj.degree} on {self.size} points")
            return np.array(obj.images, dtype=np.int64)
        arr = np.asarray(obj, dtype=np.int64)
        if arr.shape != (self.size,):
            raise ValueError("bad permutation array")
        return arr

    def batch_mul(self, A, B):
        return np.take_along_axis(B, A, axis=1)

    def batch_image(self, G, pt):
        return G[:, pt]

    def batch_is_identity(self, G):
        return np.all(G == self._id, axis=1)

    def element_entries(self):
        return self.size

    def to_permutation(self, a) -> Permutation:
        return Permutation(int(i) for i in a)

    def __repr__(self):
        return f"PointSpace({self.size})"


class VectorSpace(ActionSpace):
    """Nonzero row vectors of F_q^n, ranked by their base-p digits.

    A vector is expanded to its n*a coordinates over F_p (coordinate i*a + j
    is the u^j coefficient of entry i) and ranked as sum c_k p^k - 1, which is
    the base-q ranking of the entries' integer codes.
    """

    kind = "nonzero-vectors"

    def __init__(self, spec: FieldSpec, n: int, guard: int | None = None):
        self.spec = spec
        self.n = n
        self.p = spec.p
        self.dim = n * spec.a
        self.size = spec.q**n - 1
        self.guard = point_guard(guard)
        if self.size > self.guard:
            raise SpaceTooLarge(self.size, self.guard)
        self.base_limit = 2 * self.dim
        self._powers = np.array([self.p**k for k in range(self.dim)], dtype=np.int64)
        self._eye = np.eye(self.dim, dtype=np.int64)
        self._coords = None
        self._basis = {self.p**k - 1: k for k in range(self.dim)}
        # float32 products stay exact, with room for the reduction below, while dim * (p-1)^2 < 2^20
        self.batch_dtype = np.float32 if self.dim * (self.p - 1) ** 2 < 2**20 else np.float64
        self._pf = self.batch_dtype(self.p)
        self._ipf = self.batch_dtype(1.0 / self.p)

    def __repr__(self):
        return f"VectorSpace({self.spec!r}, {self.n}; {self.size} points)"

    # ranking
    def decode(self, idx) -> np.ndarray:
        idx = np.asarray(idx, dtype=np.int64) + 1
        return (idx[..., None] // self._powers) % self.p

    def encode(self, coords) -> np.ndarray:
        return np.asarray(coords, dtype=np.int64) @ self._powers - 1

    def point_of(self, entries: Sequence) -> int:
        """Rank of the vector with the given F_q entries."""
        coords = []
        for e in entries:
            coords.extend(self.spec(e).coeffs)
        if not any(coords):
            raise ValueError("the zero vector is not a point")
        return int(self.encode(coords))

    def basis_point(self, i: int) -> int:
        """Rank of e_i (label 1..n)."""
        return self.p ** ((i - 1) * self.spec.a) - 1

    def _all_coords(self):
        if self._coords is None:
            dt = np.uint8 if self.p < 256 else np.int32
            self._coords = self.decode(np.arange(self.size)).astype(dt)
        return self._coords

    # group operations on F_p-linear forms
    def identity(self):
        return self._eye.copy()

    def mul(self, a, b):
        return (a @ b) % self.p

    def inv(self, a):
        return _inverse_mod_p(a, self.p)

    def is_identity(self, a) -> bool:
        return bool(np.array_equal(a, self._eye))

    def image(self, a, pt):
        k = self._basis.get(pt)
        if k is not None:
            return int(a[k] @ self._powers) - 1
        v = self.decode(pt)
        return int(((v @ a) % self.p) @ self._powers) - 1

    def images(self, a, pts):
        pts = np.asarray(pts, dtype=np.int64)
        out = np.empty(pts.shape[0], dtype=np.int64)
        af = a.astype(np.float64)
        chunk = 1 << 16
        coords = self._coords
        for s in range(0, pts.shape[0], chunk):
            sub = pts[s:s + chunk]
            v = coords[sub] if coords is not None else self.decode(sub)
            img = np.fmod(v.astype(np.float64) @ af, self.p).astype(np.int64)
            out[s:s + chunk] = img @ self._powers - 1
        return out

    def perm(self, a):
        self._all_coords()
        return self.images(a, np.arange(self.size, dtype=np.int64))

    def first_moved(self, a):
        moved = np.nonzero(np.any(a != self._eye, axis=1))[0]
        if moved.size == 0:
            return None
        return int(self.p ** int(moved[0])) - 1

    def element(self, obj):
        if isinstance(obj, Matrix):
            if obj.spec.p != self.p or obj.n * obj.spec.a != self.dim or obj.spec != self.spec:
                raise ValueError(f"matrix over {obj.spec!r} does not act on {self!r}")
            return np.asarray(obj.prime_matrix, dtype=np.int64)
        arr = np.asarray(obj, dtype=np.int64) % self.p
        if arr.shape != (self.dim, self.dim):
            raise ValueError("bad matrix shape")
        return arr

    def batch(self, elems):
        return np.stack(elems).astype(self.batch_dtype)

    def _reduce(self, C):
        # C mod p for nonnegative integral floats; the half offset absorbs rounding in C / p
        q = C + self.batch_dtype(0.5)
        q *= self._ipf
        np.floor(q, out=q)
        q *= self._pf
        C -= q
        return C

    def batch_mul(self, A, B):
        dt = self.batch_dtype
        return self._reduce(A.astype(dt, copy=False) @ B.astype(dt, copy=False))

    def batch_image(self, G, pt):
        k = self._basis.get(pt)
        if k is not None:
            rows = G[:, k, :]
        else:
            rows = self._reduce(self.decode(pt).astype(self.batch_dtype) @ G)
        return rows.astype(np.int64) @ self._powers - 1

    def batch_is_identity(self, G):
        return np.all(G == self._eye, axis=(1, 2))

    def element_entries(self):
        return self.dim * self.dim

    def to_matrix(self, a) -> Matrix:
        return Matrix.from_prime_matrix(self.spec, self.n, a)


# ---------------------------------------------------------------------------
# orbits


def _bfs_step(parent, via, sources, gens):
    """Attach unseen images of ``sources`` under each (index, images-fn)."""
    found = []
    for k, apply in gens:
        if sources.size == 0:
            break
        img = apply(sources)
        mask = parent[img] < 0
        if not mask.any():
            continue
        img, src = img[mask], sources[mask]
        uniq, first = np.unique(img, return_index=True)
        parent[uniq] = src[first]
        via[uniq] = k
        found.append(uniq)
    if not found:
        return np.empty(0, dtype=np.int64)
    return np.concatenate(found)


@dataclass
class Orbit:
    """A breadth-first orbit with its Schreier vector.

    ``points`` lists the orbit in discovery order; ``parent[pt]`` is the point
    it was reached from and ``via[pt]`` the index of the generator used
    (``-1`` at the root, ``parent == -1`` off the orbit).
    """

    root: int
    points: np.ndarray
    parent: np.ndarray
    via: np.ndarray

    def __len__(self):
        return int(self.points.size)

    def __contains__(self, pt):
        return bool(self.parent[pt] >= 0)

    def path(self, pt: int) -> list[int]:
        """Generator indices of the word carrying the root to ``pt``."""
        if self.parent[pt] < 0:
            raise KeyError(pt)
        out = []
        while pt != self.root:
            out.append(int(self.via[pt]))
            pt = int(self.parent[pt])
        return out[::-1]


def orbit(gens: Sequence, pt: int, space: ActionSpace) -> Orbit:
    els = [space.element(g) for g in gens]
    parent = np.full(space.size, -1, dtype=np.int64)
    via = np.full(space.size, -1, dtype=np.int32)
    parent[pt] = pt
    fns = [(k, (lambda pts, e=e: space.images(e, pts))) for k, e in enumerate(els)]
    frontier = np.array([pt], dtype=np.int64)
    parts = [frontier]
    while frontier.size:
        frontier = _bfs_step(parent, via, frontier, fns)
        parts.append(frontier)
    return Orbit(pt, np.concatenate(parts), parent, via)


def orbits(gens: Sequence, space: ActionSpace) -> list[Orbit]:
    """All orbits of <gens>, each rooted at its least point."""
    seen = np.zeros(space.size, dtype=bool)
    out = []
    pt = 0
    while pt < space.size:
        if not seen[pt]:
            o = orbit(gens, pt, space)
            seen[o.points] = True
            out.append(o)
        pt += 1
    return out


# ---------------------------------------------------------------------------
# stabilizer chains


class _Level:
    __slots__ = ("base", "gens", "points", "parent", "via", "checked", "T", "Tinv", "have")

    def __init__(self, base: int, size: int):
        self.base = base
        self.gens: list[int] = []
        self.points = np.array([base], dtype=np.int64)
        self.parent = np.full(size, -1, dtype=np.int64)
        self.via = np.full(size, -1, dtype=np.int32)
        self.parent[base] = base
        self.checked: dict[int, int] = {}
        # dense transversal (small spaces only): T[pt] maps base -> pt
        self.T = None
        self.Tinv = None
        self.have = None


class ProductReplacement:
    """Pseudo-random group elements (product replacement with accumulator)."""

    def __init__(self, space: ActionSpace, gens: Sequence, rng: random.Random, slots: int = 10, warmup: int = 50):
        self.space = space
        self.rng = rng
        gens = list(gens) or [space.identity()]
        k = max(slots, len(gens))
        self.state = [gens[i % len(gens)] for i in range(k)]
        self.acc = space.identity()
        for _ in range(warmup):
            self.next()

    def next(self):
        sp, st, rng = self.space, self.state, self.rng
        i, j = rng.sample(range(len(st)), 2)
        other = st[j] if rng.random() < 0.5 else sp.inv(st[j])
        st[i] = sp.mul(st[i], other) if rng.random() < 0.5 else sp.mul(other, st[i])
        self.acc = sp.mul(self.acc, st[i])
        return self.acc


class StabilizerChain:
    """Base and strong generating set for a group acting on ``space``.

    Transversals are Schreier vectors.  When ``size * entries-per-element``
    stays under ``DENSE_LIMIT`` every level also keeps explicit coset
    representatives and their inverses, which lets Schreier generators be
    sifted in numpy batches.
    """

    DENSE_LIMIT = 1 << 21
    BATCH = 2048

    def __init__(self, space: ActionSpace):
        self.space = space
        self.levels: list[_Level] = []
        self.strong: list = []
        self.strong_inv: list = []
        self._perms: dict[int, np.ndarray] = {}
        self._stack = None
        self.certificate: str | None = None
        self.generators: list = []
        self.dense = space.size * space.element_entries() <= self.DENSE_LIMIT

    # -- basic data ----------------------------------------------------------
    @property
    def base(self) -> list[int]:
        return [lvl.base for lvl in self.levels]

    def orbit_sizes(self) -> list[int]:
        return [int(lvl.points.size) for lvl in self.levels]

    def order(self) -> int:
        return math.prod(self.orbit_sizes())

    def level_orbit(self, i: int) -> Orbit:
        lvl = self.levels[i]
        return Orbit(lvl.base, lvl.points, lvl.parent, lvl.via)

    def _stacks(self):
        if self._stack is None or len(self._stack[0]) != len(self.strong):
            self._stack = (self.space.batch(self.strong), self.space.batch(self.strong_inv))
        return self._stack

    # -- orbit maintenance ------------------------------------------------------
    def _images_fn(self, k):
        space = self.space

        def apply(pts):
            perm = self._perms.get(k)
            if perm is None and pts.size * 8 >= space.size:
                perm = self._perms[k] = space.perm(self.strong[k])
            if perm is not None:
                return perm[pts]
            return space.images(self.strong[k], pts)

        return apply

    def _extend(self, lvl: _Level, new: Sequence[int]):
        fns_new = [(k, self._images_fn(k)) for k in new]
        fns_all = [(k, self._images_fn(k)) for k in lvl.gens]
        parts = [lvl.points]
        frontier = _bfs_step(lvl.parent, lvl.via, lvl.points, fns_new)
        while frontier.size:
            parts.append(frontier)
            frontier = _bfs_step(lvl.parent, lvl.via, frontier, fns_all)
        if len(parts) > 1:
            lvl.points = np.concatenate(parts)
        if self.dense:
            self._fill_dense(lvl)

    def _fill_dense(self, lvl: _Level):
        sp = self.space
        if lvl.T is None:
            shape = (sp.size,) + sp.identity().shape
            lvl.T = np.zeros(shape, dtype=sp.batch_dtype)
            lvl.Tinv = np.zeros(shape, dtype=sp.batch_dtype)
            lvl.have = np.zeros(sp.size, dtype=bool)
            lvl.T[lvl.base] = lvl.Tinv[lvl.base] = sp.identity()
            lvl.have[lvl.base] = True
        pending = lvl.points[~lvl.have[lvl.points]]
        if pending.size == 0:
            return
        S, Sinv = self._stacks()
        while pending.size:
            ready = lvl.have[lvl.parent[pending]]
            pts = pending[ready]
            par = lvl.parent[pts]
            k = lvl.via[pts]
            lvl.T[pts] = sp.batch_mul(lvl.T[par], S[k])
            lvl.Tinv[pts] = sp.batch_mul(Sinv[k], lvl.Tinv[par])
            lvl.have[pts] = True
            pending = pending[~ready]

    def _add_strong(self, h, j: int):
        sp = self.space
        if j == len(self.levels):
            b = sp.first_moved(h)
            if b is None:
                raise ActionError("tried to add the identity as a strong generator")
            if len(self.levels) >= sp.base_limit:
                raise DepthExceeded(f"base longer than {sp.base_limit} on {sp!r}")
            self.levels.append(_Level(b, sp.size))
        k = len(self.strong)
        self.strong.append(h)
        self.strong_inv.append(sp.inv(h))
        for i in range(j + 1):
            self.levels[i].gens.append(k)
            self._extend(self.levels[i], [k])

    # -- sifting -------------------------------------------------------------------
    def _rep(self, lvl: _Level, pt: int):
        """Transversal element carrying the level's base point to ``pt``."""
        if lvl.T is not None:
            return lvl.T[pt].astype(np.int64)
        sp = self.space
        word = []
        while pt != lvl.base:
            word.append(int(lvl.via[pt]))
            pt = int(lvl.parent[pt])
        u = sp.identity()
        for k in reversed(word):
            u = sp.mul(u, self.strong[k])
        return u

    def _strip(self, lvl: _Level, g, pt: int):
        """g * rep(pt)^-1."""
        sp = self.space
        if lvl.Tinv is not None:
            return sp.mul(g, lvl.Tinv[pt].astype(np.int64))
        while pt != lvl.base:
            g = sp.mul(g, self.strong_inv[int(lvl.via[pt])])
            pt = int(lvl.parent[pt])
        return g

    def sift(self, g, start: int = 0):
        """Strip ``g`` through the chain; returns (residue, level reached).

        The level reached equals ``len(self.levels)`` when every base image was
        found; ``g`` is a member iff additionally the residue is the identity.
        """
        sp = self.space
        for i in range(start, len(self.levels)):
            lvl = self.levels[i]
            b = sp.image(g, lvl.base)
            if lvl.parent[b] < 0:
                return g, i
            g = self._strip(lvl, g, b)
        return g, len(self.levels)

    def _batch_members(self, G, start: int) -> np.ndarray:
        """Membership flags for a stack of elements, sifting from level ``start``."""
        sp = self.space
        ok = np.ones(G.shape[0], dtype=bool)
        for lvl in self.levels[start:]:
            b = sp.batch_image(G, lvl.base)
            inside = lvl.parent[b] >= 0
            ok &= inside
            b[~inside] = lvl.base
            G = sp.batch_mul(G, lvl.Tinv[b])
        return ok & sp.batch_is_identity(G)

    def contains_raw(self, g) -> bool:
        h, j = self.sift(g)
        return j == len(self.levels) and self.space.is_identity(h)

    def __contains__(self, obj) -> bool:
        return self.contains_raw(self.space.element(obj))

    def _absorb(self, g) -> bool:
        """Sift ``g`` and add its residue as a strong generator if needed."""
        h, j = self.sift(g)
        if j < len(self.levels) or not self.space.is_identity(h):
            self._add_strong(h, j)
            return True
        return False

    # -- construction -------------------------------------------------------------
    def add_generators(self, gens: Iterable):
        for g in gens:
            self.generators.append(g)
            self._absorb(g)
        self.certificate = None

    def random_phase(self, rng: random.Random, upper_bound: int | None = None, patience: int = 40):
        """Random Schreier-Sims: sift random elements until ``patience`` in a row are members."""
        pr = ProductReplacement(self.space, self.generators, rng)
        streak = 0
        while streak < patience:
            if upper_bound is not None and self.order() >= upper_bound:
                break
            if self._absorb(pr.next()):
                streak = 0
            else:
                streak += 1

    def _first_failure(self, i: int, k: int, start: int):
        """Offset (from ``start``) of the first Schreier generator (pt, s_k) at
        level ``i`` that does not sift through levels below ``i``, or None."""
        sp = self.space
        lvl = self.levels[i]
        pts = lvl.points[start:]
        imgs = self._images_fn(k)(pts)
        # tree edges give trivial Schreier generators
        edge = (lvl.parent[imgs] == pts) & (lvl.via[imgs] == k) & (imgs != lvl.base)
        todo = np.nonzero(~edge)[0]
        if self.dense:
            s = self._stacks()[0][k]
            for c in range(0, todo.size, self.BATCH):
                idx = todo[c:c + self.BATCH]
                G = sp.batch_mul(sp.batch_mul(lvl.T[pts[idx]], s[None]), lvl.Tinv[imgs[idx]])
                good = self._batch_members(G, i + 1)
                if not good.all():
                    return int(idx[np.argmin(good)])
            return None
        for off in todo:
            sg = self._strip(lvl, sp.mul(self._rep(lvl, int(pts[off])), self.strong[k]), int(imgs[off]))
            h, j = self.sift(sg, i + 1)
            if j < len(self.levels) or not sp.is_identity(h):
                return int(off)
        return None

    def schreier_check(self, upper_bound: int | None = None):
        """Deterministic completion: sift every Schreier generator, bottom level up.

        Pairs already verified are remembered per level (orbits only grow and
        existing tree edges never change), and the run stops early once the
        order reaches ``upper_bound``.
        """
        sp = self.space
        i = len(self.levels) - 1
        while i >= 0:
            if upper_bound is not None and self.order() >= upper_bound:
                return
            lvl = self.levels[i]
            failed = None
            for k in list(lvl.gens):
                start = lvl.checked.get(k, 0)
                off = self._first_failure(i, k, start)
                if off is None:
                    lvl.checked[k] = int(lvl.points.size)
                    continue
                pos = start + off
                lvl.checked[k] = pos
                pt = int(lvl.points[pos])
                img = self._images_fn(k)(np.array([pt]))[0]
                sg = self._strip(lvl, sp.mul(self._rep(lvl, pt), self.strong[k]), int(img))
                failed = self.sift(sg, i + 1)
                break
            if failed:
                self._add_strong(*failed)
                i = failed[1]
                continue
            i -= 1

    def complete(self, *, randomized: bool = False, upper_bound: int | None = None,
                 seed: int = 0, patience: int = 40):
        if randomized and self.generators:
            self.random_phase(random.Random(seed), upper_bound, patience)
        self._finish(upper_bound)

    def _finish(self, upper_bound):
        self._check_bound(upper_bound)
        if upper_bound is not None and self.order() == upper_bound:
            self.certificate = "order-bound"
            return
        self.schreier_check(upper_bound)
        self._check_bound(upper_bound)
        self.certificate = "order-bound" if self.order() == upper_bound else "schreier-generators"

    def _check_bound(self, upper_bound):
        if upper_bound is not None and self.order() > upper_bound:
            raise ActionError(f"chain order {self.order()} exceeds the claimed upper bound {upper_bound}")

    def verify_words(self, count: int, rng: random.Random, length: int = 20) -> bool:
        """Sift ``count`` random words in the original generators."""
        sp = self.space
        for _ in range(count):
            g = sp.identity()
            for _ in range(rng.randint(1, length)):
                g = sp.mul(g, rng.choice(self.generators))
            if not self.contains_raw(g):
                return False
        return True


def schreier_sims(gens: Sequence, space: ActionSpace, *, randomized: bool = False,
                  upper_bound: int | None = None, seed: int = 0, patience: int = 40) -> StabilizerChain:
    """Stabilizer chain of <gens>.

    ``upper_bound``, when given, must be an order the group is known not to
    exceed (for instance |SL_n(q)| for generators of determinant 1); reaching
    it certifies the chain without checking the remaining Schreier generators.
    """
    chain = StabilizerChain(space)
    chain.add_generators(space.element(g) for g in gens)
    chain.complete(randomized=randomized, upper_bound=upper_bound, seed=seed, patience=patience)
    logger.debug("chain on %r: base %s, orbits %s, %s", space, chain.base, chain.orbit_sizes(), chain.certificate)
    return chain


def contains(chain: StabilizerChain, g) -> bool:
    return g in chain


def normal_closure(ambient_gens: Sequence, seeds: Sequence, space: ActionSpace, *,
                   randomized: bool = False, upper_bound: int | None = None,
                   seed: int = 0, patience: int = 40) -> StabilizerChain:
    """Chain of the smallest subgroup containing ``seeds`` normalised by ``ambient_gens``.

    Conjugates of the generators by the ambient generators are added until
    every such conjugate sifts to the identity.  A successful sift proves
    membership even through an incomplete chain, so intermediate chains may
    be built randomly; only the final chain needs certification.
    """
    sp = space
    amb = [sp.element(a) for a in ambient_gens]
    amb_inv = [sp.inv(a) for a in amb]
    chain = StabilizerChain(sp)
    gens = [e for e in (sp.element(s) for s in seeds) if not sp.is_identity(e)]
    chain.add_generators(gens)
    rng = random.Random(seed)

    def settle():
        if randomized:
            chain.random_phase(rng, upper_bound, patience)
        else:
            chain._finish(upper_bound)

    settle()
    i = 0
    while i < len(gens):
        for a, ai in zip(amb, amb_inv):
            c = sp.mul(sp.mul(ai, gens[i]), a)
            if not chain.contains_raw(c):
                gens.append(c)
                chain.add_generators([c])
                settle()
        i += 1
    chain._finish(upper_bound)
    return chain


# ---------------------------------------------------------------------------
# reference orders


def gl_order(n: int, q: int) -> int:
    return math.prod(q**n - q**i for i in range(n))


def sl_order(n: int, spec: FieldSpec | int) -> int:
    """|SL_n(q)| = q^(n(n-1)/2) * prod_{i=2..n} (q^i - 1)."""
    q = spec.q if isinstance(spec, FieldSpec) else int(spec)
    if n < 2:
        raise ValueError("n must be at least 2")
    return q ** (n * (n - 1) // 2) * math.prod(q**i - 1 for i in range(2, n + 1))


def alt_order(m: int) -> int:
    return math.factorial(m) // 2
