"""Brute-force reference structures over parameterized strings.

Everything here is deliberately simple and quadratic-or-worse: these objects
define what the fast structures must compute, and the test-suite compares the
two on exhaustive small inputs.  All of them work on the prev-encoded text.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .pstrings import (
    Alphabet,
    PString,
    PvString,
    _re_encode_codes,
    _z,
    label_sort_key,
    pattern_codes,
)


def _text_codes(t: PString | PvString) -> tuple[tuple[int, ...], Alphabet]:
    pv = t.prev() if isinstance(t, PString) else t
    return pv.codes, pv.alphabet


def rpos(w: PvString, x: PvString) -> tuple[int, ...]:
    """All 1-based end positions of occurrences of x in w (0 marks the empty prefix).

    Position i is in the result iff the length-|x| window of w ending at i
    re-encodes to x.  The empty pattern occurs at every position 0..|w|.
    """
    wc = w.codes
    xc = pattern_codes(x, w.alphabet)
    n, m = len(wc), len(xc)
    if m == 0:
        return tuple(range(n + 1))
    return tuple(
        i
        for i in range(m, n + 1)
        if _re_encode_codes(wc[i - m : i]) == xc
    )


def scan_occurrences(t: PString | PvString, p: PString | PvString) -> tuple[int, ...]:
    """End positions of parameterized occurrences of p in t, by direct scan."""
    wc, alphabet = _text_codes(t)
    xc = pattern_codes(p, alphabet)
    if not xc:
        raise ValueError("scan_occurrences requires a nonempty pattern")
    m = len(xc)
    return tuple(
        i
        for i in range(m, len(wc) + 1)
        if _re_encode_codes(wc[i - m : i]) == xc
    )


# ---------------------------------------------------------------------------
# parameterized suffix trie and the minimal suffix automaton


class PSTrie:
    """Trie of the re-encoded suffixes of the text (one node per factor)."""

    __slots__ = ("children", "is_suffix", "text_codes", "alphabet")

    def __init__(self, text_codes: tuple[int, ...], alphabet: Alphabet):
        self.children: list[dict[int, int]] = [{}]
        self.is_suffix: list[bool] = [False]
        self.text_codes = text_codes
        self.alphabet = alphabet

    @property
    def root(self) -> int:
        return 0

    def new_node(self) -> int:
        self.children.append({})
        self.is_suffix.append(False)
        return len(self.children) - 1

    def node_count(self) -> int:
        return len(self.children)

    def accepts(self, codes: tuple[int, ...]) -> bool:
        u = 0
        for c in codes:
            nxt = self.children[u].get(c)
            if nxt is None:
                return False
            u = nxt
        return self.is_suffix[u]

    def factor_strings(self) -> set[tuple[int, ...]]:
        out = set()
        stack = [(0, ())]
        while stack:
            u, s = stack.pop()
            out.add(s)
            for c, ch in self.children[u].items():
                stack.append((ch, s + (c,)))
        return out


def build_pstrie(t: PString | PvString) -> PSTrie:
    w, alphabet = _text_codes(t)
    trie = PSTrie(w, alphabet)
    n = len(w)
    for s0 in range(n + 1):
        u = trie.root
        for d in range(s0, n):
            c = _z(w[d], d - s0)
            nxt = trie.children[u].get(c)
            if nxt is None:
                nxt = trie.new_node()
                trie.children[u][c] = nxt
            u = nxt
        trie.is_suffix[u] = True
    return trie


class PSAuto:
    """Minimal DFA for the set of re-encoded suffixes (dead state left implicit)."""

    __slots__ = ("transitions", "accepting", "initial")

    def __init__(self, transitions: list[dict[int, int]], accepting: list[bool]):
        self.transitions = transitions
        self.accepting = accepting
        self.initial = 0

    def state_count(self) -> int:
        return len(self.transitions)

    def accepts(self, codes: tuple[int, ...]) -> bool:
        u = 0
        for c in codes:
            nxt = self.transitions[u].get(c)
            if nxt is None:
                return False
            u = nxt
        return self.accepting[u]


def build_psauto(t: PString | PvString) -> PSAuto:
    """Hopcroft-free minimization: refine trie states by Moore iterations.

    Every trie node is co-accessible, so no live node ever collapses with the
    implicit dead state and signatures over present edges alone are sound.
    """
    trie = build_pstrie(t)
    n = trie.node_count()
    block = [1 if acc else 0 for acc in trie.is_suffix]
    while True:
        sigs = [
            (block[u], tuple(sorted((c, block[ch]) for c, ch in trie.children[u].items())))
            for u in range(n)
        ]
        remap: dict[tuple, int] = {}
        new_block = []
        for u in range(n):
            b = remap.setdefault(sigs[u], len(remap))
            new_block.append(b)
        if len(remap) == len(set(block)):
            block = new_block
            break
        block = new_block

    # number the blocks by first appearance so the result is deterministic
    order: dict[int, int] = {}
    for u in range(n):
        order.setdefault(block[u], len(order))
    k = len(order)
    transitions: list[dict[int, int]] = [{} for _ in range(k)]
    accepting: list[bool | None] = [None] * k
    for u in range(n):
        b = order[block[u]]
        if accepting[b] is None:
            accepting[b] = trie.is_suffix[u]
        elif accepting[b] != trie.is_suffix[u]:
            raise AssertionError("refinement merged accepting and rejecting states")
        for c, ch in trie.children[u].items():
            tgt = order[block[ch]]
            if transitions[b].setdefault(c, tgt) != tgt:
                raise AssertionError("refinement merged states with different transitions")
    return PSAuto(transitions, [bool(x) for x in accepting])


# ---------------------------------------------------------------------------
# definitional PDAWG: right-position equivalence classes


@dataclass
class OracleClass:
    """One equivalence class of factors sharing the same end-position set."""

    members: tuple[tuple[int, ...], ...]  # sorted by length; last is the longest
    positions: tuple[int, ...]
    edges: dict[int, int] = field(default_factory=dict)
    slink: int | None = None

    @property
    def longest(self) -> tuple[int, ...]:
        return self.members[-1]

    @property
    def shortest(self) -> tuple[int, ...]:
        return self.members[0]


@dataclass
class OraclePdawg:
    classes: list[OracleClass]
    source: int
    sink: int
    text_codes: tuple[int, ...]
    alphabet: Alphabet

    def node_count(self) -> int:
        return len(self.classes)

    def edge_count(self) -> int:
        return sum(len(c.edges) for c in self.classes)

    def canonical_form(self) -> dict:
        """Class-level description keyed by longest member; see pdawg.canonical_form."""
        out = {}
        for c in self.classes:
            edges = tuple(
                sorted(
                    (
                        lbl,
                        self.classes[tgt].longest,
                        len(self.classes[tgt].longest) == len(c.longest) + 1,
                    )
                    for lbl, tgt in c.edges.items()
                )
            )
            sl = None if c.slink is None else self.classes[c.slink].longest
            out[c.longest] = (len(c.longest), sl, edges)
        return out


def build_oracle_pdawg(t: PString | PvString) -> OraclePdawg:
    w, alphabet = _text_codes(t)
    n = len(w)

    # end-position sets of every distinct re-encoded factor
    ends: dict[tuple[int, ...], list[int]] = {(): list(range(n + 1))}
    for s0 in range(n):
        acc: list[int] = []
        for d in range(s0, n):
            acc.append(_z(w[d], d - s0))
            ends.setdefault(tuple(acc), []).append(d + 1)

    groups: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for factor, pos in ends.items():
        groups.setdefault(tuple(pos), []).append(factor)

    classes: list[OracleClass] = []
    class_of: dict[tuple[int, ...], int] = {}
    for pos in sorted(groups, key=lambda p: (len(groups[p][0]), p)):
        members = tuple(sorted(groups[pos], key=len))
        idx = len(classes)
        classes.append(OracleClass(members=members, positions=pos))
        for m in members:
            class_of[m] = idx

    for c in classes:
        y = c.longest
        for i in c.positions:
            if i < n:
                lbl = _z(w[i], len(y))
                tgt = class_of[y + (lbl,)]
                prev = c.edges.get(lbl)
                if prev is not None and prev != tgt:
                    raise AssertionError("inconsistent extension targets in one class")
                c.edges[lbl] = tgt
        if c.shortest:
            c.slink = class_of[_re_encode_codes(c.shortest[1:])]

    return OraclePdawg(
        classes=classes,
        source=class_of[()],
        sink=class_of[w],
        text_codes=w,
        alphabet=alphabet,
    )


# ---------------------------------------------------------------------------
# parameterized suffix tree (naive construction by trie compaction)


class PSTree:
    """Compacted tree of re-encoded suffixes.

    Nodes are the root, every branching inner node, and every node whose
    string is a re-encoded suffix (suffix ends stay explicit even when they
    do not branch).  `weiner` and `uplinks` start empty; the duality and
    right-to-left tooling fill them in.
    """

    __slots__ = (
        "parent",
        "depth",
        "children",
        "is_suffix",
        "weiner",
        "uplinks",
        "text_codes",
        "alphabet",
    )

    def __init__(self, text_codes: tuple[int, ...], alphabet: Alphabet):
        self.parent: list[int | None] = [None]
        self.depth: list[int] = [0]
        # first symbol of edge label -> (full label, child id)
        self.children: list[dict[int, tuple[tuple[int, ...], int]]] = [{}]
        self.is_suffix: list[bool] = [False]
        # weiner[v]: label -> (target node, explicit?)
        self.weiner: list[dict[int, tuple[int, bool]]] = [{}]
        # uplinks[v]: label -> (first symbol of final edge or None, node)
        self.uplinks: list[dict[int, tuple[int | None, int]]] = [{}]
        self.text_codes = text_codes
        self.alphabet = alphabet

    @property
    def root(self) -> int:
        return 0

    def node_count(self) -> int:
        return len(self.parent)

    def new_node(self, depth: int, is_suffix: bool = False) -> int:
        self.parent.append(None)
        self.depth.append(depth)
        self.children.append({})
        self.is_suffix.append(is_suffix)
        self.weiner.append({})
        self.uplinks.append({})
        return len(self.parent) - 1

    def attach(self, parent: int, label: tuple[int, ...], child: int) -> None:
        if not label:
            raise ValueError("tree edges carry nonempty labels")
        self.children[parent][label[0]] = (label, child)
        self.parent[child] = parent

    def node_strings(self) -> list[tuple[int, ...]]:
        out: list[tuple[int, ...] | None] = [None] * self.node_count()
        out[0] = ()
        stack = [0]
        while stack:
            u = stack.pop()
            base = out[u]
            for label, ch in self.children[u].values():
                out[ch] = base + label
                stack.append(ch)
        return out  # type: ignore[return-value]

    def suffix_node_by_depth(self) -> dict[int, int]:
        return {self.depth[v]: v for v in range(self.node_count()) if self.is_suffix[v]}

    def descend(self, codes: tuple[int, ...]) -> tuple[int, bool] | None:
        """Locate `codes` in the tree.

        Returns (node, exact) where node is the shallowest node at or below
        the locus and exact says the locus is the node itself, or None when
        the string is not present.
        """
        u = 0
        q = 0
        m = len(codes)
        while q < m:
            ent = self.children[u].get(codes[q])
            if ent is None:
                return None
            label, ch = ent
            take = min(len(label), m - q)
            if codes[q : q + take] != label[:take]:
                return None
            q += take
            u = ch
            if take < len(label):
                return (u, False)
        return (u, True)

    def canonical_form(self) -> dict:
        strs = self.node_strings()
        out = {}
        for v in range(self.node_count()):
            kids = tuple(sorted((lab, strs[ch]) for lab, ch in self.children[v].values()))
            out[strs[v]] = (self.depth[v], self.is_suffix[v], kids)
        return out

    def sorted_children(self, v: int) -> list[tuple[tuple[int, ...], int]]:
        return [
            self.children[v][c]
            for c in sorted(self.children[v], key=lambda c: label_sort_key(c, self.alphabet))
        ]


def build_pstree_naive(t: PString | PvString) -> PSTree:
    trie = build_pstrie(t)
    w, alphabet = trie.text_codes, trie.alphabet
    tree = PSTree(w, alphabet)
    tree.is_suffix[0] = trie.is_suffix[0]

    def kept(u: int) -> bool:
        return trie.is_suffix[u] or len(trie.children[u]) >= 2

    # DFS from the trie root, accumulating labels between kept nodes
    stack: list[tuple[int, int, list[int]]] = []
    for c in sorted(trie.children[0], key=lambda c: label_sort_key(c, alphabet), reverse=True):
        stack.append((trie.children[0][c], 0, [c]))
    while stack:
        u, parent, label = stack.pop()
        if kept(u):
            v = tree.new_node(tree.depth[parent] + len(label), trie.is_suffix[u])
            tree.attach(parent, tuple(label), v)
            parent, label = v, []
        for c in sorted(
            trie.children[u], key=lambda c: label_sort_key(c, alphabet), reverse=True
        ):
            stack.append((trie.children[u][c], parent, label + [c]))
    return tree


def tree_equal(a: PSTree, b: PSTree) -> bool:
    return a.canonical_form() == b.canonical_form()
