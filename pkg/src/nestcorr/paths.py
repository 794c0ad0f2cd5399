"""Nests of non-intersecting lattice paths: stars, conjugate stars,
watermelons and random-turns walkers on a ring.

A path is stored as a start point plus the number of upward steps on each
vertical line it visits, left to right, with one rightward step between
consecutive lines.  Line ``x`` of a nest is 1-based as in the drawings:
stars live on lines 1..N, the conjugate half of a watermelon on N+1..2N.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass
from math import factorial
from typing import NamedTuple

from . import checks
from .errors import Collision, InconsistentNest, InvalidDeviation, ValidationError
from .partitions import iter_partitions_in_box, staircase
from .qcore import QPoly, det
from .schur import content, iter_skew_ssyt, iter_ssyt, q_points, schur_eval

__all__ = [
    "PathNest",
    "Volume",
    "enumerate_stars",
    "enumerate_conj_stars",
    "enumerate_watermelons",
    "star_volume",
    "conj_star_volume",
    "watermelon_volume",
    "path_gf",
    "watermelon_p_form",
    "watermelon_schur_form",
    "nests_to_json",
    "nests_from_json",
    "hopping_weights",
    "random_turns_count",
    "random_turns_dp",
    "random_turns_matrix",
    "random_turns_kst",
    "enumerate_walks",
    "bottleneck_count",
    "bottleneck_dp",
    "bottleneck_gluing",
]


@dataclass(frozen=True)
class PathNest:
    """One nest of paths.

    ``paths`` holds ``((x0, y0), ups)`` per path.  For random-turns nests
    ``trajectory`` lists the labelled walker positions after each tick and
    ``moves`` the (walker, direction) pair of each tick; ``paths`` is empty.
    """

    kind: str
    paths: tuple = ()
    deviation: int = 0
    shape: tuple = ()
    gluing: tuple = ()
    Mcal: int = 0
    trajectory: tuple = ()
    moves: tuple = ()
    ring: int = 0

    def vertices(self, i):
        (x, y), ups = self.paths[i]
        pts = [(x, y)]
        for pos, c in enumerate(ups):
            for _ in range(c):
                y += 1
                pts.append((x, y))
            if pos < len(ups) - 1:
                x += 1
                pts.append((x, y))
        return pts

    def step_counts(self):
        """Upward steps per vertical line, as (m_1, ..., m_X) for lines 1..X."""
        per_line = defaultdict(int)
        top = 0
        for (x0, _), ups in self.paths:
            for pos, c in enumerate(ups):
                per_line[x0 + pos] += c
                top = max(top, x0 + pos)
        return tuple(per_line[x] for x in range(1, top + 1))

    def is_vertex_disjoint(self):
        if self.kind == "random_turns":
            return all(len(set(conf)) == len(conf) for conf in self.trajectory)
        seen = set()
        for i in range(len(self.paths)):
            pts = self.vertices(i)
            if seen.intersection(pts):
                return False
            seen.update(pts)
        return True

    def validate(self):
        if not self.is_vertex_disjoint():
            raise InconsistentNest(f"{self.kind} nest has touching paths")
        if self.kind == "star":
            if sum(self.step_counts()) != sum(self.shape):
                raise InconsistentNest("star step counts do not add up to |lam|")
        elif self.kind == "watermelon":
            if sum(self.step_counts()) != self.Mcal * len(self.paths):
                raise InconsistentNest("watermelon step counts do not add up to M N")
        return self

    def to_dict(self):
        out = {"kind": self.kind, "deviation": self.deviation, "shape": list(self.shape)}
        if self.kind == "random_turns":
            out["ring"] = self.ring
            out["trajectory"] = [list(c) for c in self.trajectory]
            out["moves"] = [list(m) for m in self.moves]
        else:
            out["Mcal"] = self.Mcal
            out["gluing"] = list(self.gluing)
            out["step_counts"] = list(self.step_counts())
            out["paths"] = [{"start": list(s), "ups": list(u)} for s, u in self.paths]
        return out

    @classmethod
    def from_dict(cls, obj):
        if obj["kind"] == "random_turns":
            return cls(
                kind="random_turns",
                shape=tuple(obj.get("shape", ())),
                trajectory=tuple(tuple(c) for c in obj["trajectory"]),
                moves=tuple(tuple(m) for m in obj.get("moves", ())),
                ring=obj["ring"],
            )
        return cls(
            kind=obj["kind"],
            paths=tuple((tuple(p["start"]), tuple(p["ups"])) for p in obj["paths"]),
            deviation=obj.get("deviation", 0),
            shape=tuple(obj.get("shape", ())),
            gluing=tuple(obj.get("gluing", ())),
            Mcal=obj.get("Mcal", 0),
        )


class Volume(NamedTuple):
    value: int
    flavor: str


def nests_to_json(items):
    """JSON array of nests; (nest, volume) pairs carry the volume along."""
    out = []
    for item in items:
        if isinstance(item, tuple) and len(item) == 2 and isinstance(item[1], Volume):
            nest, vol = item
            d = nest.to_dict()
            d["volume"] = {"value": vol.value, "flavor": vol.flavor}
        else:
            d = item.to_dict()
        out.append(d)
    return json.dumps(out, sort_keys=True)


def nests_from_json(text):
    return [PathNest.from_dict(d) for d in json.loads(text)]


# -- stars ------------------------------------------------------------------


def _star_paths(tableau, N):
    # row i (1-based) starts at (i, N - i) and has one line per entry value i..N
    paths = []
    for i, row in enumerate(tableau, start=1):
        ups = [0] * (N - i + 1)
        for v in row:
            ups[v - i] += 1
        paths.append(((i, N - i), tuple(ups)))
    return tuple(paths)


def enumerate_stars(lam, N, k=0):
    """One star per semistandard tableau of shape lam with entries in k+1..N.

    Rows of lam beyond its length are empty paths, so the nest always has
    N paths.
    """
    lam = tuple(p for p in lam if p > 0)
    if len(lam) > N - k:
        return
    shape = lam + (0,) * (N - len(lam))
    for t in iter_ssyt(shape, N, low=k + 1):
        yield PathNest("star", _star_paths(t, N), deviation=k, shape=shape)


def _conj_paths(tableau, lam, N):
    # row a of the skew tableau M^N / lam: from (1, mu_a) to (a, M + N - a)
    paths = []
    for a, row in enumerate(tableau, start=1):
        ups = [0] * a
        for v in row:
            ups[v - 1] += 1
        paths.append(((1, lam[a - 1] + N - a), tuple(ups)))
    return tuple(paths)


def enumerate_conj_stars(lam, Mcal, N, k=0):
    """One conjugate star per skew tableau of shape (Mcal^N) / lam-hat.

    lam has at most N - k nonzero parts.  With k > 0 the lines N-k+1..N
    carry Mcal upward steps each.
    """
    lam = tuple(lam) + (0,) * (N - len(tuple(lam)))
    if len(lam) > N or any(p > Mcal for p in lam):
        raise ValidationError(f"{lam} does not fit in the {N} x {Mcal} box")
    if any(p for p in lam[N - k:]):
        return
    for t in iter_skew_ssyt((Mcal,) * N, lam, N):
        c = content(t, N)
        if k and any(c[a] != Mcal for a in range(N - k, N)):
            continue
        yield PathNest("conj_star", _conj_paths(t, lam, N), deviation=k, shape=lam, Mcal=Mcal)


def star_volume(nest, flavor="plain"):
    """Volume of a star.

    ``plain``: sum (N - j) c_j.  ``w``: (N+1)|lam| - sum j c_j.
    ``wbar``: (N+k+1)|lam| - sum j c_j.
    """
    N = len(nest.paths)
    c = nest.step_counts()
    c = c + (0,) * (N - len(c))
    size = sum(nest.shape)
    weighted = sum(j * cj for j, cj in enumerate(c, start=1))
    if flavor == "plain":
        return Volume(N * size - weighted, flavor)
    if flavor == "w":
        return Volume((N + 1) * size - weighted, flavor)
    if flavor == "wbar":
        return Volume((N + nest.deviation + 1) * size - weighted, flavor)
    raise ValidationError(f"unknown star volume {flavor!r}")


def conj_star_volume(nest, flavor="w"):
    """Volume of a conjugate star from its line counts b_a.

    ``plain``: sum b_a (a - 1).  ``d``: sum (M - lam_a - b_a)(a - 1).
    ``w``: sum (M - b_a)(a - 1).
    """
    N = len(nest.paths)
    b = nest.step_counts()
    b = b + (0,) * (N - len(b))
    M = nest.Mcal
    if flavor == "plain":
        return Volume(sum(ba * a for a, ba in enumerate(b)), flavor)
    if flavor == "d":
        return Volume(sum((M - la - ba) * a for a, (la, ba) in enumerate(zip(nest.shape, b))), flavor)
    if flavor == "w":
        return Volume(sum((M - ba) * a for a, ba in enumerate(b)), flavor)
    raise ValidationError(f"unknown conjugate star volume {flavor!r}")


def watermelon_volume(m, N, Mcal, k=0, delta=0):
    """sum_{j>k} (2N - j) m_j + delta sum_{k<j<=N} m_j - M N (N-1)/2.

    ``m`` lists the counts on lines 1..2N.  This is the number of cells
    under the nest inside the rectangles of its paths (plus the delta
    shift); with a lower bound n on the gluing parts it is applied to the
    actual nest, which already includes the n full columns.
    """
    m = tuple(m) + (0,) * (2 * N - len(m))
    if any(m[:k]):
        raise InconsistentNest("steps on a line excluded by the deviation")
    vol = sum((2 * N - j) * mj for j, mj in enumerate(m, start=1) if j > k)
    vol += delta * sum(m[k:N])
    return vol - Mcal * N * (N - 1) // 2


def _glue(star, conj, N, Mcal, k):
    paths = []
    for (s_start, s_ups), (_, b_ups) in zip(star.paths, conj.paths):
        paths.append((s_start, s_ups + b_ups))
    mu = tuple(la + N - i for i, la in enumerate(star.shape, start=1))
    return PathNest("watermelon", tuple(paths), deviation=k, shape=star.shape, gluing=mu, Mcal=Mcal)


def enumerate_watermelons(N, L, Mcal, n=0, delta=0):
    """Every watermelon (with deviation N - L) together with its volume.

    The gluing partition is iterated outermost, in decreasing
    lexicographic order of lam = mu - staircase, then star pairs.
    """
    if not 0 <= L <= N or Mcal < 0:
        raise ValidationError("need 0 <= L <= N and M >= 0")
    k = N - L
    if delta not in (0, k):
        raise InvalidDeviation(f"delta must be 0 or {k}, got {delta}")
    if k and n:
        raise ValidationError("a lower bound n needs L = N")
    if not 0 <= n <= Mcal:
        raise ValidationError("need 0 <= n <= M")
    for lam in iter_partitions_in_box(N - k, Mcal, n):
        stars = list(enumerate_stars(lam, N, k))
        conjs = list(enumerate_conj_stars(lam + (0,) * k, Mcal, N))
        for star in stars:
            for conj in conjs:
                nest = _glue(star, conj, N, Mcal, k)
                if checks.DEBUG:
                    nest.validate()
                    _check_volume_split(star, conj, nest, N, Mcal, k, delta)
                vol = watermelon_volume(nest.step_counts(), N, Mcal, k, delta)
                yield nest, Volume(vol, "watermelon" if k == 0 else f"watermelon_delta{delta}")


def _check_volume_split(star, conj, nest, N, Mcal, k, delta):
    flavor = "wbar" if delta else "w"
    left = star_volume(star, flavor).value + conj_star_volume(conj, "w").value
    right = watermelon_volume(nest.step_counts(), N, Mcal, k, delta)
    checks.require_equal("star + conjugate star volume", left, right)


# -- generating functions ----------------------------------------------------


def watermelon_p_form(N, L, Mcal, n=0, delta=0):
    """sum over lam of S_lam(x) S_lam-hat(q_N / q).

    x is q_N for L = N, (q, ..., q^L) at delta = 0 and (q^(k+1), ..., q^N)
    at delta = k.  Parts of lam run between n and M.
    """
    k = N - L
    x = q_points(1 + delta, 1 + delta + L)
    y = q_points(0, N)
    total = QPoly()
    for lam in iter_partitions_in_box(L, Mcal, n):
        total = total + QPoly.coerce(schur_eval(lam, x)) * QPoly.coerce(schur_eval(lam + (0,) * k, y))
    return total


def watermelon_schur_form(N, L, Mcal, n=0, delta=0, exponent="derived"):
    """q-power times the Schur function of ((M-n)^N, 0^L) at (q_N, q^(delta+N+1), ..., q^(delta+N+L)).

    With a lower bound n the q-power is n N^2 - (M - n) N (N+1)/2.
    ``exponent="literal"`` uses n N (N-1) in place of n N^2, which is short
    by q^(n N).
    """
    shape = (Mcal - n,) * N + (0,) * L
    pts = q_points(1, N + 1) + q_points(delta + N + 1, delta + N + L + 1)
    lead = n * N * N if exponent == "derived" else n * N * (N - 1)
    if exponent not in ("derived", "literal"):
        raise ValidationError(f"unknown exponent {exponent!r}")
    return QPoly.coerce(schur_eval(shape, pts)).shift(lead - (Mcal - n) * N * (N + 1) // 2)


def _gf(items):
    counts = defaultdict(int)
    for _, vol in items:
        counts[vol.value] += 1
    return QPoly.from_dict(counts)


def path_gf(family, N, Mcal=0, L=None, n=0, delta=0, lam=(), k=0, flavor=None, check=True):
    """Sum of q^volume over a nest family, checked against its Schur form.

    ``family`` is ``"watermelon"``, ``"star"`` or ``"conj_star"``.
    Watermelons are compared with the P form and the Schur form; stars and
    conjugate stars with their principal specializations.  Mismatches
    raise IdentityMismatch when ``check`` is set.
    """
    if family == "watermelon":
        L = N if L is None else L
        value = _gf(enumerate_watermelons(N, L, Mcal, n, delta))
        if check:
            checks.require_equal("watermelon vs P form", value, watermelon_p_form(N, L, Mcal, n, delta))
            checks.require_equal("watermelon vs Schur form", value, watermelon_schur_form(N, L, Mcal, n, delta))
        return value
    if family == "star":
        flavor = flavor or "plain"
        lam = tuple(lam)
        value = _gf((s, star_volume(s, flavor)) for s in enumerate_stars(lam, N, k))
        if check:
            padded = lam + (0,) * (N - k - len(lam))
            if flavor == "plain":
                expected = schur_eval(padded, q_points(0, N - k))
            elif flavor == "w":
                expected = schur_eval(padded, q_points(1, N - k + 1))
            else:
                expected = schur_eval(padded, q_points(k + 1, N + 1))
            checks.require_equal(f"star gf ({flavor})", value, QPoly.coerce(expected))
        return value
    if family == "conj_star":
        flavor = flavor or "w"
        lam = tuple(lam) + (0,) * (N - len(tuple(lam)))
        value = _gf((b, conj_star_volume(b, flavor)) for b in enumerate_conj_stars(lam, Mcal, N, k))
        if check and flavor == "w":
            expected = schur_eval(lam[: N - k], q_points(0, N - k))
            checks.require_equal("conjugate star gf", value, QPoly.coerce(expected))
        return value
    raise ValidationError(f"unknown family {family!r}")


# -- random turns walkers ------------------------------------------------------


def _check_sites(sites, M, name):
    sites = tuple(sites)
    if len(set(sites)) != len(sites):
        raise Collision(f"{name} has a repeated site: {sites}")
    if any(not 0 <= s <= M for s in sites):
        raise ValidationError(f"{name} has a site outside [0, {M}]")
    return tuple(sorted(sites, reverse=True))


def hopping_weights(M, wrap_sign=1):
    """Delta as a dense integer matrix: 1 for ring neighbours.

    The wrap entries (0, M) and (M, 0) get ``wrap_sign``; at M = 1 the two
    contributions land on the same entry.
    """
    if M < 1:
        raise ValidationError("the ring needs M >= 1")
    D = [[0] * (M + 1) for _ in range(M + 1)]
    for a in range(M + 1):
        for b in range(M + 1):
            if abs(a - b) == 1:
                D[a][b] += 1
            if abs(a - b) == M:
                D[a][b] += wrap_sign
    return D


def _moves(conf, M):
    # every single-walker move on the ring that lands on a free site
    occupied = set(conf)
    for idx, s in enumerate(conf):
        for d in (1, -1):
            t = (s + d) % (M + 1)
            if t in occupied:
                continue
            yield idx, d, conf[:idx] + (t,) + conf[idx + 1:]


def _dp_step(table, M, allowed=None):
    nxt = defaultdict(int)
    for conf, cnt in table.items():
        for _, _, new in _moves(conf, M):
            key = tuple(sorted(new, reverse=True))
            if allowed is None or allowed(key):
                nxt[key] += cnt
    return nxt


def random_turns_dp(l, j, K, M):
    """Count K-tick histories from l to j, one walker hopping per tick."""
    start = _check_sites(l, M, "l")
    end = _check_sites(j, M, "j")
    if M < 1:
        raise ValidationError("the ring needs M >= 1")
    if len(start) != len(end):
        return 0
    table = {start: 1}
    for _ in range(K):
        table = _dp_step(table, M)
    return table.get(end, 0)


def _sector_basis(N, M):
    from itertools import combinations

    return [tuple(sorted(c, reverse=True)) for c in combinations(range(M + 1), N)]


def random_turns_matrix(l, j, K, M):
    """<j| (-H)^K |l> with -H = sum Delta_nm s^-_n s^+_m on the N-spin sector."""
    start = _check_sites(l, M, "l")
    end = _check_sites(j, M, "j")
    if len(start) != len(end):
        return 0
    D = hopping_weights(M)
    basis = _sector_basis(len(start), M)
    index = {b: i for i, b in enumerate(basis)}
    size = len(basis)
    H = [[0] * size for _ in range(size)]
    for col, conf in enumerate(basis):
        occ = set(conf)
        for m in conf:
            for nsite in range(M + 1):
                if nsite in occ or not D[nsite][m]:
                    continue
                new = tuple(sorted((occ - {m}) | {nsite}, reverse=True))
                H[index[new]][col] += D[nsite][m]
    vec = [0] * size
    vec[index[start]] = 1
    for _ in range(K):
        vec = [sum(H[r][c] * vec[c] for c in range(size) if H[r][c]) for r in range(size)]
    return vec[index[end]]


def _mat_powers(D, K):
    size = len(D)
    out = [[[int(r == c) for c in range(size)] for r in range(size)]]
    for _ in range(K):
        prev = out[-1]
        out.append([[sum(prev[r][t] * D[t][c] for t in range(size)) for c in range(size)] for r in range(size)])
    return out


def _compositions(K, N):
    if N == 0:
        if K == 0:
            yield ()
        return
    if N == 1:
        yield (K,)
        return
    for first in range(K + 1):
        for rest in _compositions(K - first, N - 1):
            yield (first,) + rest


def random_turns_kst(l, j, K, M, wrap_sign=None):
    """sum_{|k|=K} multinomial(k) det((Delta^(k_r))_{j_r, l_s}).

    On the ring the determinant only counts non-crossing histories when
    the wrap hop carries the sign (-1)^(N-1): a walker crossing the seam
    cyclically relabels the N walkers.  ``wrap_sign=1`` gives the untwisted
    hopping matrix.
    """
    start = _check_sites(l, M, "l")
    end = _check_sites(j, M, "j")
    N = len(start)
    if N != len(end):
        return 0
    if wrap_sign is None:
        wrap_sign = -1 if N % 2 == 0 else 1
    powers = _mat_powers(hopping_weights(M, wrap_sign), K)
    total = 0
    for ks in _compositions(K, N):
        mult = factorial(K)
        for kr in ks:
            mult //= factorial(kr)
        rows = [[powers[ks[r]][end[r]][start[s]] for s in range(N)] for r in range(N)]
        total += mult * det(rows)
    return total


def random_turns_count(l, j, K, M):
    """|P_K(l -> j)|: DP over configurations, checked against the sector matrix power.

    At N = 1 it is also checked against (Delta^K)_{jl}.
    """
    if K < 0:
        raise ValidationError("K must be non-negative")
    value = random_turns_dp(l, j, K, M)
    checks.require_equal("random turns DP vs sector matrix", value, random_turns_matrix(l, j, K, M))
    if len(tuple(l)) == 1 and len(tuple(j)) == 1:
        (a,), (b,) = tuple(l), tuple(j)
        checks.require_equal("random turns vs Delta^K", value, _mat_powers(hopping_weights(M), K)[K][b][a])
    return value


def enumerate_walks(l, j, K, M):
    """Every K-tick history from l to j as a random_turns PathNest.

    Walkers keep their labels; ``trajectory[t]`` gives walker positions
    after t ticks in the order of l (sorted decreasingly).
    """
    start = _check_sites(l, M, "l")
    end = set(_check_sites(j, M, "j"))
    traj = [start]
    moves = []

    def rec(t):
        conf = traj[-1]
        if t == K:
            if set(conf) == end:
                yield PathNest("random_turns", trajectory=tuple(traj), moves=tuple(moves), ring=M, shape=start)
            return
        for idx, d, new in _moves(conf, M):
            traj.append(new)
            moves.append((idx, d))
            yield from rec(t + 1)
            traj.pop()
            moves.pop()

    yield from rec(0)


def bottleneck_dp(l, j, K1, K2, m, M):
    """K1 free ticks from l, then only configurations on sites >= m survive, then K2 ticks to j."""
    start = _check_sites(l, M, "l")
    end = _check_sites(j, M, "j")
    if not 0 <= m <= M:
        raise ValidationError("need 0 <= m <= M")
    table = {start: 1}
    for _ in range(K1):
        table = _dp_step(table, M)
    table = {c: v for c, v in table.items() if min(c) >= m}
    for _ in range(K2):
        table = _dp_step(table, M)
    return table.get(end, 0)


def bottleneck_gluing(l, j, K1, K2, m, M):
    """sum over strict rho + staircase with parts in [m, M] of |P_K1(l -> rho)| |P_K2(rho -> j)|."""
    start = _check_sites(l, M, "l")
    end = _check_sites(j, M, "j")
    N = len(start)
    total = 0
    for lam in iter_partitions_in_box(N, M - m - N + 1, 0) if M - m + 1 >= N else ():
        mid = tuple(p + s + m for p, s in zip(lam, staircase(N)))
        left = random_turns_dp(start, mid, K1, M)
        if left:
            total += left * random_turns_dp(mid, end, K2, M)
    return total


def bottleneck_count(l, j, K1, K2, m, M):
    """|P_{K1+K2}(l ->_m j)| via the gluing sum, checked against the projected DP."""
    value = bottleneck_gluing(l, j, K1, K2, m, M)
    checks.require_equal("bottleneck gluing vs DP", value, bottleneck_dp(l, j, K1, K2, m, M))
    return value
