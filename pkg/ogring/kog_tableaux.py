"""Shifted-diagram combinatorics behind the K-theoretic Pieri rule.

Row r of the shifted diagram of a strict partition mu occupies columns
r, ..., r + mu_r - 1. A skew shape nu/lam keeps the boxes of nu that are not
boxes of lam. A KOG tableau of content [1, i] is a labeling of a rim with
values in [1, i], using every value, such that rows and columns strictly
increase and every box is either <= all boxes south-west of it or >= all of
them. "South-west of B" means weakly below and weakly left of B, B excluded.

>>> shape = SkewShiftedShape((4, 2), (3,))
>>> count_kog(shape, 2)
2
>>> pieri_coefficients((1,), 1, 8)
{(2,): 1}
"""
import logging
import threading
from itertools import zip_longest

from ogring.error import IndexRangeError, MalformedInputError

__all__ = [
    "strict_partition",
    "SkewShiftedShape",
    "KOGTableau",
    "is_rim",
    "kog_violations",
    "neighbour_remark_holds",
    "iter_kog_tableaux",
    "count_kog",
    "pieri_candidates",
    "pieri_coefficients",
]

logger = logging.getLogger(__name__)


def strict_partition(parts):
    parts = tuple(parts)
    for p in parts:
        if not isinstance(p, int) or isinstance(p, bool) or p <= 0:
            raise MalformedInputError(f"parts must be positive integers: {parts}")
    for a, b in zip(parts, parts[1:]):
        if a <= b:
            raise MalformedInputError(f"parts must strictly decrease: {parts}")
    return parts


class SkewShiftedShape:
    __slots__ = ("outer", "inner", "boxes", "_box_set")

    def __init__(self, outer, inner=()):
        outer = strict_partition(outer)
        inner = strict_partition(inner)
        if len(inner) > len(outer) or any(l > o for o, l in zip(outer, inner)):
            raise MalformedInputError(f"{inner} is not contained in {outer}")
        self.outer = outer
        self.inner = inner
        self.boxes = tuple(
            (r, c)
            for r, (o, l) in enumerate(zip_longest(outer, inner, fillvalue=0), start=1)
            for c in range(r + l, r + o)
        )
        self._box_set = frozenset(self.boxes)

    @property
    def size(self):
        return len(self.boxes)

    def __contains__(self, box):
        return box in self._box_set

    def is_rim(self):
        return is_rim(self)

    def translation_key(self):
        if not self.boxes:
            return ()
        r0 = min(r for r, _ in self.boxes)
        c0 = min(c for _, c in self.boxes)
        return tuple((r - r0, c - c0) for r, c in self.boxes)

    def render(self, labels=None):
        """ASCII picture: ``.`` for boxes of the inner shape, ``#`` or the label."""
        if labels is None:
            labels = {}
        width = max((r + p - 1 for r, p in enumerate(self.outer, start=1)), default=0)
        lines = []
        for r, part in enumerate(self.outer, start=1):
            inner = self.inner[r - 1] if r <= len(self.inner) else 0
            cells = []
            for c in range(1, width + 1):
                if c < r or c >= r + part:
                    cells.append("  ")
                elif c < r + inner:
                    cells.append(" .")
                else:
                    cells.append(f"{labels.get((r, c), '#'):>2}")
            lines.append("".join(cells).rstrip())
        return "\n".join(lines)

    def __eq__(self, other):
        if not isinstance(other, SkewShiftedShape):
            return NotImplemented
        return (self.outer, self.inner) == (other.outer, other.inner)

    def __hash__(self):
        return hash((self.outer, self.inner))

    def __repr__(self):
        return f"<{__name__}.{type(self).__qualname__} {self.outer}/{self.inner}>"


def is_rim(shape):
    """True iff no box lies strictly south-east of another box."""
    return not any(
        r2 > r1 and c2 > c1 for r1, c1 in shape.boxes for r2, c2 in shape.boxes
    )


def _south_west(shape, box):
    r, c = box
    return [b for b in shape.boxes if b != box and b[0] >= r and b[1] <= c]


class KOGTableau:
    __slots__ = ("shape", "labels")

    def __init__(self, shape, labels):
        if len(labels) != shape.size:
            raise MalformedInputError(f"{len(labels)} labels for {shape.size} boxes")
        self.shape = shape
        self.labels = tuple(labels)

    @property
    def labeling(self):
        return dict(zip(self.shape.boxes, self.labels))

    @property
    def content(self):
        return frozenset(self.labels)

    def __getitem__(self, box):
        return self.labeling[box]

    def violations(self):
        return kog_violations(self.shape, self.labeling)

    def render(self):
        return self.shape.render(self.labeling)

    def __repr__(self):
        return f"<{__name__}.{type(self).__qualname__} {self.shape.outer}/{self.shape.inner} {self.labels}>"


def kog_violations(shape, labeling):
    """List the ways ``labeling`` fails to be a KOG tableau (empty if it is one).

    Checks every pair of boxes directly; the enumerator below never calls it.
    """
    problems = []
    if not is_rim(shape):
        problems.append("shape is not a rim")
    for b1 in shape.boxes:
        for b2 in shape.boxes:
            if b1[0] == b2[0] and b1[1] < b2[1] and labeling[b1] >= labeling[b2]:
                problems.append(f"row not increasing at {b1}, {b2}")
            if b1[1] == b2[1] and b1[0] < b2[0] and labeling[b1] >= labeling[b2]:
                problems.append(f"column not increasing at {b1}, {b2}")
    for box in shape.boxes:
        value = labeling[box]
        others = [labeling[b] for b in _south_west(shape, box)]
        if not (all(value <= x for x in others) or all(value >= x for x in others)):
            problems.append(f"{box} is neither <= nor >= all boxes south-west of it")
    return problems


def neighbour_remark_holds(tableau):
    """A box with a left neighbour is >= its south-west boxes; a box with a
    box below it is <= them."""
    shape, labeling = tableau.shape, tableau.labeling
    for box in shape.boxes:
        r, c = box
        others = [labeling[b] for b in _south_west(shape, box)]
        if (r, c - 1) in shape and not all(labeling[box] >= x for x in others):
            return False
        if (r + 1, c) in shape and not all(labeling[box] <= x for x in others):
            return False
    return True


def _labelings(shape, i):
    """Yield label tuples (row-major) of all KOG tableaux with content [1, i]."""
    boxes = shape.boxes
    size = len(boxes)
    if size < i or not is_rim(shape):
        return
    position = {box: k for k, box in enumerate(boxes)}
    smaller = []
    own_south_west = []
    watchers = []
    for k, (r, c) in enumerate(boxes):
        # boxes that must carry a smaller label
        smaller.append([position[b] for b in boxes[:k] if b[0] == r or b[1] == c])
        own_south_west.append([position[b] for b in boxes[:k] if b[0] == r])
        watchers.append([position[b] for b in boxes[:k] if b[0] < r and b[1] >= c])

    labels = [0] * size
    le = [True] * size
    ge = [True] * size
    uses = [0] * (i + 1)
    distinct = 0

    def place(k):
        nonlocal distinct
        if k == size:
            if distinct == i:
                yield tuple(labels)
            return
        if i - distinct > size - k:
            return
        low = 1 + max((labels[j] for j in smaller[k]), default=0)
        for x in range(low, i + 1):
            own_le = all(x <= labels[j] for j in own_south_west[k])
            own_ge = all(x >= labels[j] for j in own_south_west[k])
            if not (own_le or own_ge):
                continue
            saved = []
            ok = True
            for b in watchers[k]:
                new_le = le[b] and labels[b] <= x
                new_ge = ge[b] and labels[b] >= x
                if not (new_le or new_ge):
                    ok = False
                    break
                saved.append((b, le[b], ge[b]))
                le[b], ge[b] = new_le, new_ge
            if ok:
                labels[k] = x
                le[k], ge[k] = own_le, own_ge
                if uses[x] == 0:
                    distinct += 1
                uses[x] += 1
                yield from place(k + 1)
                uses[x] -= 1
                if uses[x] == 0:
                    distinct -= 1
            for b, old_le, old_ge in saved:
                le[b], ge[b] = old_le, old_ge

    yield from place(0)


def iter_kog_tableaux(shape, i):
    for labels in _labelings(shape, i):
        yield KOGTableau(shape, labels)


_counts = {}
_counts_lock = threading.Lock()


def count_kog(shape, i):
    """Number of KOG tableaux of ``shape`` with content exactly [1, i]."""
    key = (shape.translation_key(), i)
    cached = _counts.get(key)
    if cached is None:
        cached = sum(1 for _ in _labelings(shape, i))
        with _counts_lock:
            _counts.setdefault(key, cached)
    return cached


def pieri_candidates(lam, i, n, most=None):
    """Strict partitions nu in [1, n] containing lam, with at most one more
    part, at most i new boxes per row and at least i new boxes, whose skew
    shape nu/lam is a rim. With ``most``, at most that many new boxes."""
    lam = strict_partition(lam)
    rows = lam + (0,)

    def extend(r, previous, bound, added, acc):
        if r > len(rows):
            if added >= i:
                yield tuple(p for p in acc if p)
            return
        low = rows[r - 1]
        high = min(n, previous - 1, low + i)
        for part in range(low, high + 1):
            if most is not None and added + part - low > most:
                break
            new_bound = bound
            if part > low:
                if bound is not None and r + part - 1 > bound:
                    break
                new_bound = r + low if bound is None else min(bound, r + low)
            yield from extend(r + 1, part, new_bound, added + part - low, acc + (part,))

    yield from extend(1, n + 1, None, 0, ())


_pieri = {}
_pieri_lock = threading.Lock()


def pieri_items(lam, i, n, most=None):
    """Cached ``((nu, signed coefficient), ...)`` for e_i * e_lam, keeping
    the nu with at most ``most`` boxes more than lam."""
    key = (lam, i, n, most)
    cached = _pieri.get(key)
    if cached is not None:
        return cached
    items = []
    for nu in pieri_candidates(lam, i, n, most):
        shape = SkewShiftedShape(nu, lam)
        count = count_kog(shape, i)
        if count:
            items.append((nu, count if (shape.size - i) % 2 == 0 else -count))
    cached = tuple(items)
    with _pieri_lock:
        cached = _pieri.setdefault(key, cached)
        if len(_pieri) % 10000 == 0:
            logger.debug("pieri table holds %d entries", len(_pieri))
    return cached


def pieri_coefficients(lam, i, n):
    """Signed coefficients of e_i * e_lam in the Schubert basis of K(X).

    Parameters
    ----------
    lam : Sequence[int]
        strict partition
    i : int
        1 <= i <= n
    n : int

    Returns
    -------
    dict
        nu -> (-1)^(|nu/lam| - i) * (number of KOG tableaux of nu/lam with
        content [1, i]); shapes with parts above n are dropped.
    """
    lam = strict_partition(lam)
    if not 1 <= i <= n:
        raise IndexRangeError(f"Pieri index {i} outside [1, {n}]")
    if lam and lam[0] > n:
        return {}
    return dict(pieri_items(lam, i, n))
