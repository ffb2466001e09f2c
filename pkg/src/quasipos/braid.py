"""Braid words, embedded bands, plat plans and the diagrams they present."""

from __future__ import annotations

import random
import re
from dataclasses import dataclass

from .diagram import Builder, DiagramError, LinkDiagram, braid_crossing, orient

__all__ = [
    "BraidError",
    "BraidWord",
    "Band",
    "BandRepresentation",
    "PlatPlan",
    "validate_plat_plan",
    "band_to_word",
    "exponent_sum",
    "closed_braid_diagram",
    "plat_diagram",
    "braid_as_plat",
    "parse_braid_text",
    "parse_bands_text",
    "parse_plat_text",
    "random_word",
    "random_positive_knot_word",
    "random_annular_band_rep",
]


class BraidError(ValueError):
    pass


@dataclass(frozen=True)
class BraidWord:
    """Word in the Artin generators of B_n; letter ``i`` is sigma_i, ``-i`` its inverse."""

    n: int
    letters: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(x) for x in self.letters))
        if self.n < 1:
            raise BraidError("a braid needs at least one strand")
        for x in self.letters:
            if x == 0 or abs(x) > self.n - 1:
                raise BraidError(f"generator {x} out of range for {self.n} strands")

    @property
    def positive(self) -> bool:
        return all(x > 0 for x in self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def exponent_sum(self) -> int:
        return sum(1 if x > 0 else -1 for x in self.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.n, tuple(-x for x in reversed(self.letters)))

    def mirror(self) -> "BraidWord":
        return BraidWord(self.n, tuple(-x for x in self.letters))

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if self.n != other.n:
            raise BraidError("cannot multiply braids on different strand counts")
        return BraidWord(self.n, self.letters + other.letters)

    def permutation(self) -> list:
        """perm[i] is the top position of the strand starting at bottom position i (0-based)."""
        pos = list(range(self.n))  # pos[p] = strand currently at position p
        for x in self.letters:
            i = abs(x) - 1
            pos[i], pos[i + 1] = pos[i + 1], pos[i]
        perm = [0] * self.n
        for p, s in enumerate(pos):
            perm[s] = p
        return perm

    def cycle_count(self) -> int:
        perm, seen, count = self.permutation(), set(), 0
        for i in range(self.n):
            if i not in seen:
                count += 1
                while i not in seen:
                    seen.add(i)
                    i = perm[i]
        return count

    def to_text(self) -> str:
        return f"braid n={self.n}\n" + " ".join(str(x) for x in self.letters) + "\n"

    def __str__(self) -> str:
        if not self.letters:
            return f"e in B_{self.n}"
        return " ".join(f"s{abs(x)}" + ("" if x > 0 else "^-1") for x in self.letters)


@dataclass(frozen=True)
class Band:
    i: int
    j: int
    sign: int = 1

    def __post_init__(self):
        if not 1 <= self.i < self.j:
            raise BraidError(f"band ({self.i},{self.j}) needs 1 <= i < j")
        if self.sign not in (1, -1):
            raise BraidError("band sign must be +1 or -1")


@dataclass(frozen=True)
class BandRepresentation:
    n: int
    bands: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "bands", tuple(self.bands))
        if self.n < 1:
            raise BraidError("a band representation needs at least one strand")
        for b in self.bands:
            if b.j > self.n:
                raise BraidError(f"band ({b.i},{b.j}) does not fit in {self.n} strands")

    @property
    def quasipositive(self) -> bool:
        return all(b.sign > 0 for b in self.bands)

    def __len__(self) -> int:
        return len(self.bands)

    def exponent_sum(self) -> int:
        return sum(b.sign for b in self.bands)

    def word(self) -> BraidWord:
        letters = []
        for b in self.bands:
            letters.extend(band_to_word(b))
        return BraidWord(self.n, letters)

    def to_text(self) -> str:
        body = " ".join(f"({b.i},{b.j},{'+' if b.sign > 0 else '-'})" for b in self.bands)
        return f"bands n={self.n}\n{body}\n"


def band_to_word(b: Band) -> tuple:
    """Letters of (s_i ... s_{j-2}) s_{j-1}^{+-1} (s_i ... s_{j-2})^{-1}."""
    head = tuple(range(b.i, b.j - 1))
    return head + (b.sign * (b.j - 1),) + tuple(-x for x in reversed(head))


def exponent_sum(w) -> int:
    return w.exponent_sum()


# ---------------------------------------------------------------------------
# plat plans

def _pairs_to_map(pairs, n: int) -> dict:
    m = {}
    for p in pairs:
        if len(p) != 2:
            raise BraidError(f"{tuple(p)} is not a transposition")
        s, t = p
        if s == t:
            raise BraidError(f"fixed point {s} in a plat plan")
        for x in (s, t):
            if not 1 <= x <= n:
                raise BraidError(f"index {x} outside 1..{n}")
            if x in m:
                raise BraidError(f"index {x} appears twice: not an involution")
        m[s], m[t] = t, s
    if len(m) != n:
        missing = sorted(set(range(1, n + 1)) - set(m))
        raise BraidError(f"indices {missing} are fixed points of the plat plan")
    return m


def validate_plat_plan(pairs, n: int) -> tuple:
    """Check a perfect matching of 1..n for the nesting condition
    s < t < pi(s)  implies  s < pi(t) < pi(s); return it as sorted pairs."""
    if n % 2:
        raise BraidError("a plat needs an even number of strands")
    pi = _pairs_to_map(pairs, n)
    for s in range(1, n + 1):
        for t in range(s + 1, pi[s]):
            if not s < pi[t] < pi[s]:
                raise BraidError(
                    f"nesting condition fails: s={s}, t={t}, pi(s)={pi[s]}, pi(t)={pi[t]}"
                    " (chords cross)"
                )
    return tuple(sorted((min(s, pi[s]), max(s, pi[s])) for s in pi if s < pi[s]))


@dataclass(frozen=True)
class PlatPlan:
    n: int
    bottom: tuple
    top: tuple

    def __post_init__(self):
        object.__setattr__(self, "bottom", validate_plat_plan(self.bottom, self.n))
        object.__setattr__(self, "top", validate_plat_plan(self.top, self.n))

    @classmethod
    def nested(cls, n: int) -> "PlatPlan":
        """Plan (1 n)(2 n-1)... at both ends."""
        pairs = tuple((i, n + 1 - i) for i in range(1, n // 2 + 1))
        return cls(n, pairs, pairs)

    def to_text(self) -> str:
        fmt = lambda ps: "".join(f"({a} {b})" for a, b in ps)
        return f"bottom={fmt(self.bottom)} top={fmt(self.top)}"


# ---------------------------------------------------------------------------
# diagrams

def _stack(b: Builder, w: BraidWord, bottom):
    cur = list(bottom)
    for x in w.letters:
        i = abs(x) - 1
        l, r, _ = braid_crossing(b, cur[i], cur[i + 1], 1 if x > 0 else -1)
        cur[i], cur[i + 1] = l, r
    return cur


def closed_braid_diagram(w: BraidWord) -> LinkDiagram:
    """Oriented diagram of the closure, every strand running upward."""
    b = Builder()
    bottom = [b.wire() for _ in range(w.n)]
    top = _stack(b, w, bottom)
    for x, y in zip(bottom, top):
        b.join(x, y)
    raw = b.finish(closed_wires=bottom)
    if not raw.crossings:
        return LinkDiagram((), (), raw.loops)
    # a bottom wire feeds an incoming port of the first crossing on its strand
    starts = [b.port[x][0] for x in bottom if x in b.port]
    return orient(raw, starts=starts)


def plat_diagram(w: BraidWord, plan: PlatPlan) -> LinkDiagram:
    """Unoriented plat diagram: caps below by plan.bottom, above by plan.top."""
    if plan.n != w.n:
        raise BraidError(f"plan on {plan.n} strands does not match a braid on {w.n}")
    b = Builder()
    bottom = [b.wire() for _ in range(w.n)]
    top = _stack(b, w, bottom)
    for s, t in plan.bottom:
        b.join(bottom[s - 1], bottom[t - 1])
    for s, t in plan.top:
        b.join(top[s - 1], top[t - 1])
    return b.finish(closed_wires=bottom + top)


def braid_as_plat(w: BraidWord):
    """The word in B_{2n} (same letters) with the nested plan, presenting the closure."""
    n2 = 2 * w.n
    return BraidWord(n2, w.letters), PlatPlan.nested(n2)


# ---------------------------------------------------------------------------
# text formats

_HEADER = re.compile(r"^\s*(braid|bands|plat)\b(.*)$")


def _header_n(rest: str, lineno: int) -> int:
    m = re.search(r"\bn\s*=\s*(\d+)", rest)
    if not m:
        raise BraidError(f"line {lineno}: header needs n=<strands>")
    return int(m.group(1))


def _body_lines(lines):
    for k, line in enumerate(lines, 2):
        s = line.split("#", 1)[0].strip()
        if s:
            yield k, s


def parse_braid_text(text: str) -> BraidWord:
    lines = text.splitlines()
    if not lines or not lines[0].strip().startswith("braid"):
        raise BraidError("line 1: expected header 'braid n=<strands>'")
    n = _header_n(lines[0], 1)
    letters = []
    for lineno, s in _body_lines(lines[1:]):
        for col, tok in _tokens(s):
            try:
                letters.append(int(tok))
            except ValueError:
                raise BraidError(f"line {lineno}, column {col}: {tok!r} is not a signed integer") from None
    try:
        return BraidWord(n, letters)
    except BraidError as exc:
        raise BraidError(f"braid: {exc}") from None


def _tokens(s: str):
    for m in re.finditer(r"\S+", s):
        yield m.start() + 1, m.group()


_BAND = re.compile(r"\(\s*(\d+)\s*,\s*(\d+)\s*,\s*([+-])\s*1?\s*\)")


def parse_bands_text(text: str) -> BandRepresentation:
    lines = text.splitlines()
    if not lines or not lines[0].strip().startswith("bands"):
        raise BraidError("line 1: expected header 'bands n=<strands>'")
    n = _header_n(lines[0], 1)
    bands = []
    for lineno, s in _body_lines(lines[1:]):
        pos = 0
        for m in _BAND.finditer(s):
            gap = s[pos:m.start()].strip()
            if gap:
                raise BraidError(f"line {lineno}, column {pos + 1}: cannot parse {gap!r}")
            i, j, sg = int(m.group(1)), int(m.group(2)), m.group(3)
            try:
                bands.append(Band(i, j, 1 if sg == "+" else -1))
            except BraidError as exc:
                raise BraidError(f"line {lineno}, column {m.start() + 1}: {exc}") from None
            pos = m.end()
        if s[pos:].strip():
            raise BraidError(f"line {lineno}, column {pos + 1}: cannot parse {s[pos:].strip()!r}")
    return BandRepresentation(n, bands)


_CYCLES = re.compile(r"\(\s*(\d+)\s+(\d+)\s*\)")


def _parse_pairs(spec: str, what: str):
    spec = spec.strip()
    pairs = [(int(a), int(b)) for a, b in _CYCLES.findall(spec)]
    if _CYCLES.sub("", spec).strip():
        raise BraidError(f"{what}: cannot parse {spec!r}; expected cycles like (1 2)(3 4)")
    return pairs


def parse_plat_text(text: str):
    lines = text.splitlines()
    if not lines or not lines[0].strip().startswith("plat"):
        raise BraidError("line 1: expected header 'plat n=<strands> bottom=(..) top=(..)'")
    head = lines[0]
    n = _header_n(head, 1)
    mb = re.search(r"bottom\s*=\s*((?:\(\s*\d+\s+\d+\s*\)\s*)*)", head)
    mt = re.search(r"top\s*=\s*((?:\(\s*\d+\s+\d+\s*\)\s*)*)", head)
    if not mb or not mt:
        raise BraidError("line 1: plat header needs bottom=(..) and top=(..)")
    try:
        plan = PlatPlan(n, _parse_pairs(mb.group(1), "bottom"), _parse_pairs(mt.group(1), "top"))
    except BraidError as exc:
        raise BraidError(f"line 1: {exc}") from None
    word = parse_braid_text("\n".join([f"braid n={n}"] + lines[1:]))
    return word, plan


def plat_to_text(w: BraidWord, plan: PlatPlan) -> str:
    return f"plat n={w.n} {plan.to_text()}\n" + " ".join(str(x) for x in w.letters) + "\n"


# ---------------------------------------------------------------------------
# sampling

def random_word(rng: random.Random, n_max: int, length_max: int, positive=False) -> BraidWord:
    n = rng.randint(2, n_max)
    k = rng.randint(0, length_max)
    letters = [rng.randint(1, n - 1) * (1 if positive else rng.choice((1, -1))) for _ in range(k)]
    return BraidWord(n, letters)


def random_positive_knot_word(rng: random.Random, n_max: int, length_max: int) -> BraidWord:
    """Positive word whose closure is a knot (rejection sampling)."""
    while True:
        n = rng.randint(1, n_max)
        if n - 1 > length_max:
            continue
        k = rng.randint(max(n - 1, 0), length_max)
        letters = [rng.randint(1, n - 1) for _ in range(k)] if n > 1 else []
        w = BraidWord(n, letters)
        if w.cycle_count() == 1:
            return w


def random_annular_band_rep(rng: random.Random, n: int) -> BandRepresentation:
    """Quasipositive band representation whose surface is an annulus.

    The n disks are joined in a random Hamiltonian cycle by n positive bands
    listed in random order; a connected surface with Euler characteristic 0
    is an annulus.
    """
    if n < 2:
        raise BraidError("an annular band representation needs at least 2 strands")
    cycle = list(range(1, n + 1))
    rng.shuffle(cycle)
    edges = [tuple(sorted((cycle[k], cycle[(k + 1) % n]))) for k in range(n)]
    if n == 2:
        edges = [(1, 2), (1, 2)]
    rng.shuffle(edges)
    return BandRepresentation(n, [Band(i, j, 1) for i, j in edges])
