"""The parameterized DAWG: smallest automaton of re-encoded factors.

Nodes are equivalence classes of factors sharing the same set of ending
positions in the text; edges extend the longest member of a class by one
symbol.  Because a back-reference distance can collapse to 0 when the context
gets short, following an edge labelled 0 is position-dependent: `trans`
resolves it by looking at how many integer labels are still compatible with
the current context length.

`build_online` adds one symbol at a time, maintaining the suffix links, in the
style of the classic DAWG construction: climb the suffix-link chain from the
old sink adding edges to the new sink, find the longest repeated suffix, and
split its class when the class is too coarse.
"""

from __future__ import annotations

from dataclasses import dataclass

from .pstrings import (
    Alphabet,
    PString,
    PvString,
    PvSymbol,
    _code_of_symbol,
    _re_encode_codes,
    label_sort_key,
)

TOP = 0  # auxiliary node above the source; never counted or exported


@dataclass
class ConstructionStats:
    """Work counters for one online construction run."""

    redirected_secondary_edges: int = 0
    suffix_links_deleted: int = 0
    trace: list[dict] | None = None


class Pdawg:
    __slots__ = ("alphabet", "text_codes", "lens", "slinks", "edges", "source", "sink", "sink_history")

    def __init__(self, alphabet: Alphabet):
        self.alphabet = alphabet
        self.text_codes: tuple[int, ...] = ()
        # arena; index 0 is the auxiliary top node
        self.lens: list[int] = [-1, 0]
        self.slinks: list[int | None] = [None, TOP]
        self.edges: list[dict[int, int]] = [{}, {}]
        self.source = 1
        self.sink = 1
        self.sink_history: list[int] = [1]
        # top behaves as if every alphabet symbol led to the source
        top = self.edges[TOP]
        top[0] = self.source
        for s in alphabet.sigma:
            top[alphabet.static_code(s)] = self.source

    def node_ids(self) -> range:
        return range(1, len(self.lens))

    def node_count(self) -> int:
        return len(self.lens) - 1

    def edge_count(self) -> int:
        return sum(len(self.edges[u]) for u in self.node_ids())

    def is_primary(self, u: int, target: int) -> bool:
        return self.lens[target] == self.lens[u] + 1

    def length_of(self, u: int) -> int:
        return self.lens[u]


def _trans(g: Pdawg, u: int, i: int, a: int) -> int | None:
    """Transition from u reading symbol `a` after having read i symbols.

    Static symbols and positive distances follow plain edges.  Symbol 0 may be
    the image of any distance exceeding i, so every integer label b with b = 0
    or b > i is a candidate; a unique candidate is followed directly, several
    candidates all lead to one class reachable via the suffix link of the
    child along the smallest positive candidate.
    """
    if u == TOP:
        return g.source
    eu = g.edges[u]
    if a != 0:
        return eu.get(a)
    only = None
    count = 0
    best = None
    for b in eu:
        if b >= 0 and (b == 0 or b > i):
            count += 1
            only = b
            if b != 0 and (best is None or b < best):
                best = b
    if count == 0:
        return None
    if count == 1:
        return eu[only]
    out = g.slinks[eu[best]]
    if out is None:
        raise AssertionError("trans consulted an unset suffix link")
    return out


def trans(g: Pdawg, u: int, i: int, a: PvSymbol) -> int | None:
    """Public transition; `a` is a symbol, `i` the number of symbols read so far."""
    return _trans(g, u, i, _code_of_symbol(a, g.alphabet))


def build_online(
    t: PString | PvString, collect_trace: bool = False
) -> tuple[Pdawg, ConstructionStats]:
    """Build the PDAWG of `t` left to right, one symbol per step."""
    pv = t.prev() if isinstance(t, PString) else t
    w = pv.codes
    g = Pdawg(pv.alphabet)
    g.text_codes = w
    stats = ConstructionStats(trace=[] if collect_trace else None)

    lens = g.lens
    slinks = g.slinks
    edges = g.edges

    def find_prelrs(u: int, a: int, sink: int) -> int:
        # climb from the old sink adding edges to the new sink until some
        # suffix one longer than the next chain node survives extension by a
        while u != TOP:
            j = lens[slinks[u]] + 1
            if _trans(g, u, j, a if a < 0 or a <= j else 0) is not None:
                break
            L = lens[u]
            edges[u][a if a < 0 or a <= L else 0] = sink
            u = slinks[u]
        return u

    def lrs_length(u: int, a: int, sink: int) -> tuple[int, int, int]:
        # length k of the longest repeated suffix, the node v housing it,
        # and where the split-redirection climb should start
        L = lens[u]
        zau = a if a < 0 or a <= L else 0
        eu = edges[u]
        v = eu.get(zau)
        if v is not None:
            return lens[u] + 1, v, u
        # only reachable for integer a: the surviving extension went through
        # a bundled 0-edge, so the repeated suffix is shorter than len(u)+1
        m = None
        for b in eu:
            if b >= 0 and (m is None or (m != 0 and (b == 0 or b > m))):
                m = b
        if m is None:
            raise AssertionError("pre-LRS node lost its integer labels")
        k = m if a == 0 else (a if m == 0 else min(a, m))
        v = _trans(g, u, k - 1, 0)
        if v is None:
            raise AssertionError("longest repeated suffix has no class")
        eu[zau] = sink
        return k, v, slinks[u]

    def split_node(v: int, k: int, u: int, a: int) -> int:
        vp = len(lens)
        lens.append(k)
        slinks.append(None)
        edges.append({})
        stats.suffix_links_deleted += 1
        # in-edges: every suffix of the new longest repeated suffix that still
        # reaches v from the chain belongs below the split point
        while True:
            L = lens[u]
            key = a if a < 0 or a <= L else 0
            if edges[u].get(key) != v:
                break
            edges[u][key] = vp
            stats.redirected_secondary_edges += 1
            u = slinks[u]
        # out-edges: keep the labels that stay meaningful at length k
        evp = edges[vp]
        for b, tgt in edges[v].items():
            if b < 0 or 0 < b <= k:
                evp[b] = tgt
        t0 = _trans(g, v, k, 0)
        if t0 is not None:
            evp[0] = t0
        slinks[vp] = slinks[v]
        slinks[v] = vp
        return vp

    for i, a in enumerate(w, start=1):
        sink = len(lens)
        lens.append(i)
        slinks.append(None)
        edges.append({})
        before = stats.redirected_secondary_edges

        u = find_prelrs(g.sink, a, sink)
        k, v, u = lrs_length(u, a, sink)
        if lens[v] == k:
            slinks[sink] = v
            split = False
        else:
            slinks[sink] = split_node(v, k, u, a)
            split = True

        g.sink = sink
        g.sink_history.append(sink)
        if stats.trace is not None:
            stats.trace.append(
                {
                    "i": i,
                    "symbol": a,
                    "lrs_len": k,
                    "split": split,
                    "redirected": stats.redirected_secondary_edges - before,
                }
            )

    return g, stats


# ---------------------------------------------------------------------------
# inspection, comparison, serialization


def node_longest_codes(g: Pdawg) -> list[tuple[int, ...] | None]:
    """Longest member of each node's class, indexed by node id.

    Recovered by walking suffix-link chains from every prefix class, which
    covers every node including ones with no incoming edges.
    """
    w = g.text_codes
    out: list[tuple[int, ...] | None] = [None] * len(g.lens)
    out[g.source] = ()
    for i in range(len(g.sink_history) - 1, 0, -1):
        u = g.sink_history[i]
        while out[u] is None:
            out[u] = _re_encode_codes(w[i - g.lens[u] : i])
            u = g.slinks[u]  # type: ignore[assignment]
    if any(s is None for s in out[1:]):
        raise AssertionError("some node is on no suffix-link chain")
    return out


def canonical_form(g: Pdawg) -> dict:
    """Graph keyed by class-longest strings; equal forms mean equal structures."""
    names = node_longest_codes(g)
    out = {}
    for u in g.node_ids():
        name = names[u]
        edges = tuple(
            sorted(
                (lbl, names[tgt], g.lens[tgt] == g.lens[u] + 1)
                for lbl, tgt in g.edges[u].items()
            )
        )
        sl = g.slinks[u]
        out[name] = (g.lens[u], None if sl == TOP else names[sl], edges)
    return out


def stats_summary(g: Pdawg) -> dict:
    primary = sum(
        1
        for u in g.node_ids()
        for tgt in g.edges[u].values()
        if g.lens[tgt] == g.lens[u] + 1
    )
    edges = g.edge_count()
    depth = [0] * len(g.lens)
    best = 0
    for u in sorted(g.node_ids(), key=lambda u: g.lens[u]):
        sl = g.slinks[u]
        if u != g.source:
            depth[u] = depth[sl] + 1
            best = max(best, depth[u])
    return {
        "n": len(g.text_codes),
        "nodes": g.node_count(),
        "edges": edges,
        "primary": primary,
        "secondary": edges - primary,
        "slink_depth": best,
    }


def _label_to_json(code: int, alphabet: Alphabet) -> dict:
    if code < 0:
        return {"s": alphabet.static_symbol(code)}
    return {"n": code}


def _label_from_json(obj: dict, alphabet: Alphabet) -> int:
    if not isinstance(obj, dict) or len(obj) != 1:
        raise ValueError("malformed edge label")
    if "s" in obj:
        return alphabet.static_code(obj["s"])
    if "n" in obj:
        v = obj["n"]
        if not isinstance(v, int) or v < 0:
            raise ValueError("malformed numeric label")
        return v
    raise ValueError("malformed edge label")


def to_json_dict(g: Pdawg) -> dict:
    """Serialize without the top node; node ids shift down by one."""
    nodes = []
    for u in g.node_ids():
        items = sorted(g.edges[u].items(), key=lambda e: label_sort_key(e[0], g.alphabet))
        nodes.append(
            {
                "len": g.lens[u],
                "edges": [
                    [_label_to_json(lbl, g.alphabet), tgt - 1, g.lens[tgt] == g.lens[u] + 1]
                    for lbl, tgt in items
                ],
                "slink": None if g.slinks[u] == TOP else g.slinks[u] - 1,
            }
        )
    return {
        "nodes": nodes,
        "source": g.source - 1,
        "sink_history": [h - 1 for h in g.sink_history],
    }


def from_json_dict(d: dict, alphabet: Alphabet, text_codes: tuple[int, ...]) -> Pdawg:
    try:
        nodes = d["nodes"]
        source = d["source"]
        history = d["sink_history"]
        g = Pdawg(alphabet)
        g.text_codes = tuple(text_codes)
        if source != 0 or not nodes:
            raise ValueError("source must be node 0")
        top_edges = dict(g.edges[TOP])
        # rebuild arena (node i in file -> arena id i+1)
        g.lens = [-1] + [int(spec["len"]) for spec in nodes]
        g.slinks = [None] + [
            TOP if spec["slink"] is None else int(spec["slink"]) + 1 for spec in nodes
        ]
        g.edges = [top_edges] + [
            {
                _label_from_json(lbl, alphabet): int(tgt) + 1
                for lbl, tgt, _primary in spec["edges"]
            }
            for spec in nodes
        ]
        if g.lens[g.source] != 0:
            raise ValueError("source node must have length 0")
        g.sink_history = [int(h) + 1 for h in history]
        if len(g.sink_history) != len(text_codes) + 1:
            raise ValueError("sink history length disagrees with the text")
        g.sink = g.sink_history[-1]
        for u in g.node_ids():
            if u != g.source and not 1 <= g.slinks[u] < len(g.lens):
                raise ValueError("suffix link out of range")
            for tgt in g.edges[u].values():
                if not 1 <= tgt < len(g.lens):
                    raise ValueError("edge target out of range")
        return g
    except (KeyError, TypeError, IndexError) as exc:
        raise ValueError(f"malformed index body: {exc}") from exc
