"""Command-line surface: build indexes, query them, export DOT, self-verify.

Exit codes: 0 success, 1 self-test property failure, 2 usage error (bad
flags, overlapping alphabets, unclassifiable symbols), 3 corrupt or
incompatible index file.
"""

from __future__ import annotations

import itertools
import json
import random
import sys
from pathlib import Path

import click

from .duality import offline_build_pdawg, suffix_link_tree_as_pstree, verify_duality
from .matcher import OccurrenceIndex, build_occurrence_index, locate, p_match_query
from .oracles import (
    PSTree,
    build_oracle_pdawg,
    build_psauto,
    build_pstree_naive,
    build_pstrie,
    scan_occurrences,
    tree_equal,
)
from .pdawg import (
    Pdawg,
    build_online,
    canonical_form,
    from_json_dict,
    node_longest_codes,
    stats_summary,
    to_json_dict,
)
from .pstrings import (
    Alphabet,
    AlphabetError,
    PString,
    PvString,
    label_sort_key,
    prev_decode,
    pv_reverse,
    re_encode,
)
from .rtl import build_pstree_rtl, rtl_steps, upward_links_to_pdawg

INDEX_FORMAT = "pdawg-index"
INDEX_VERSION = 1

EXIT_PROPERTY = 1
EXIT_CORRUPT = 3


def _corrupt(message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(EXIT_CORRUPT)


def _split_symbols(value: str, tokenize: bool) -> list[str]:
    return value.split() if tokenize else list(value)


def _read_text(path: str, tokenize: bool) -> list[str]:
    data = Path(path).read_bytes()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise click.UsageError(f"{path}: not valid UTF-8: {exc}") from exc
    if tokenize:
        return text.split()
    if text.endswith("\r\n"):
        text = text[:-2]
    elif text.endswith("\n"):
        text = text[:-1]
    return list(text)


def _codes_str(codes, alphabet: Alphabet) -> str:
    parts = [alphabet.static_symbol(c) if c < 0 else str(c) for c in codes]
    if all(len(p) == 1 for p in parts):
        return "".join(parts)
    return " ".join(parts)


def _label_str(code: int, alphabet: Alphabet) -> str:
    return alphabet.static_symbol(code) if code < 0 else str(code)


def _gv_quote(s: str) -> str:
    return '"{}"'.format(s.replace("\\", "\\\\").replace('"', '\\"'))


@click.group()
@click.version_option(package_name="artifact", prog_name="pdawg")
def main() -> None:
    """Parameterized pattern matching indexes over static/parameter texts."""


# ---------------------------------------------------------------------------
# build


def _build_pdawg(p: PString, engine: str):
    """Return (pdawg, build_steps dict) for the chosen construction engine."""
    if engine == "online":
        g, stats = build_online(p)
        steps = {
            "redirected_secondary": stats.redirected_secondary_edges,
            "slinks_deleted": stats.suffix_links_deleted,
        }
        return g, steps
    rev = pv_reverse(p.prev())
    if engine == "offline":
        tree = build_pstree_naive(rev)
        g = offline_build_pdawg(tree)
    else:  # rtl
        tree, _counters = build_pstree_rtl(rev)
        g = upward_links_to_pdawg(tree)
    return g, {"redirected_secondary": 0, "slinks_deleted": 0}


def _index_json(
    g: Pdawg, *, pi_auto: bool, tokenize: bool, idx: OccurrenceIndex | None
) -> dict:
    body = {
        "format": INDEX_FORMAT,
        "version": INDEX_VERSION,
        "alphabet": {
            "sigma": list(g.alphabet.sigma),
            "pi": sorted(g.alphabet.pi),
            "pi_auto": pi_auto,
        },
        "tokenize": tokenize,
        "n": len(g.text_codes),
        "text": list(g.text_codes),
        "pdawg": to_json_dict(g),
    }
    if idx is not None:
        body["locate"] = {
            "enter": list(idx.enter),
            "leave": list(idx.leave),
            "positions": list(idx.positions),
        }
    return body


def _dump_json(obj: dict) -> str:
    return json.dumps(obj, indent=2) + "\n"


@main.command("build")
@click.argument("textfile", type=click.Path(exists=True, dir_okay=False, readable=True))
@click.option("--sigma", "sigma_chars", default=None, help="Static symbols, as characters (or whitespace-separated tokens with --tokenize).")
@click.option("--sigma-file", type=click.Path(exists=True, dir_okay=False, readable=True), default=None, help="File listing static symbols, one per line.")
@click.option("--pi", "pi_chars", default=None, help="Parameter symbols, same format as --sigma.")
@click.option("--pi-auto", is_flag=True, help="Treat every non-static symbol of the text as a parameter.")
@click.option("--tokenize", is_flag=True, help="Split the text on whitespace instead of reading characters.")
@click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None, help="Write the index file here.")
@click.option("--with-locate", is_flag=True, help="Also store the occurrence-location arrays in the index.")
@click.option("--engine", type=click.Choice(["online", "offline", "rtl"]), default="online", show_default=True, help="Construction algorithm.")
def cmd_build(textfile, sigma_chars, sigma_file, pi_chars, pi_auto, tokenize, out, with_locate, engine):
    """Index TEXTFILE and print build statistics as JSON."""
    if (sigma_chars is None) == (sigma_file is None):
        raise click.UsageError("give exactly one of --sigma or --sigma-file")
    if (pi_chars is None) == (not pi_auto):
        raise click.UsageError("give exactly one of --pi or --pi-auto")
    symbols = _read_text(textfile, tokenize)
    if sigma_file is not None:
        sigma = [line.strip() for line in Path(sigma_file).read_text("utf-8").splitlines() if line.strip()]
    else:
        sigma = _split_symbols(sigma_chars, tokenize)
    try:
        if pi_auto:
            alphabet = Alphabet.from_text(symbols, sigma)
        else:
            alphabet = Alphabet(sigma, _split_symbols(pi_chars, tokenize))
        text = PString(symbols, alphabet)
        pv = text.prev()
    except AlphabetError as exc:
        raise click.UsageError(str(exc)) from exc
    g, steps = _build_pdawg(text, engine)
    idx = build_occurrence_index(g) if with_locate else None
    if out is not None:
        Path(out).write_text(
            _dump_json(_index_json(g, pi_auto=pi_auto, tokenize=tokenize, idx=idx)),
            "utf-8",
        )
    summary = stats_summary(g)
    stats = {
        "n": summary["n"],
        "nodes": summary["nodes"],
        "edges": summary["edges"],
        "primary": summary["primary"],
        "secondary": summary["secondary"],
        "pi_size": len(alphabet.pi),
        "sigma_size": len(alphabet.sigma),
        "prev": str(pv),
        "build_steps": steps,
    }
    click.echo(_dump_json(stats), nl=False)


# ---------------------------------------------------------------------------
# loading


def _load_index(path: str) -> tuple[Pdawg, OccurrenceIndex | None, dict]:
    try:
        obj = json.loads(Path(path).read_text("utf-8"))
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        _corrupt(f"{path}: cannot parse index: {exc}")
    if not isinstance(obj, dict) or obj.get("format") != INDEX_FORMAT:
        _corrupt(f"{path}: not a {INDEX_FORMAT} file")
    if obj.get("version") != INDEX_VERSION:
        _corrupt(
            f"{path}: index version {obj.get('version')!r} unsupported"
            f" (expected {INDEX_VERSION})"
        )
    try:
        spec = obj["alphabet"]
        alphabet = Alphabet(spec["sigma"], spec["pi"])
        text_codes = tuple(int(c) for c in obj["text"])
        g = from_json_dict(obj["pdawg"], alphabet, text_codes)
    except (KeyError, TypeError, ValueError, AlphabetError) as exc:
        _corrupt(f"{path}: {exc}")
    idx = None
    if "locate" in obj:
        idx = build_occurrence_index(g)
        stored = obj["locate"]
        fresh = {
            "enter": list(idx.enter),
            "leave": list(idx.leave),
            "positions": list(idx.positions),
        }
        if stored != fresh:
            _corrupt(f"{path}: stored occurrence arrays disagree with the automaton")
    return g, idx, obj


def _pattern_pstring(obj: dict, g: Pdawg, pattern: str) -> PString:
    symbols = _split_symbols(pattern, bool(obj.get("tokenize")))
    sigma = set(g.alphabet.sigma)
    pi_auto = bool(obj["alphabet"].get("pi_auto"))
    params = set()
    for sym in symbols:
        if sym in sigma:
            continue
        if pi_auto or sym in g.alphabet.pi:
            params.add(sym)
        else:
            raise click.UsageError(
                f"pattern symbol {sym!r} is neither static nor a declared parameter"
            )
    return PString(symbols, Alphabet(g.alphabet.sigma, params))


# ---------------------------------------------------------------------------
# query


@main.command("query")
@click.argument("indexfile", type=click.Path(exists=True, dir_okay=False, readable=True))
@click.argument("pattern")
@click.option("--locate", "do_locate", is_flag=True, help="Report sorted occurrence positions instead of true/false.")
@click.option("--begin-positions", is_flag=True, help="With --locate, report 1-based begin positions instead of end positions.")
def cmd_query(indexfile, pattern, do_locate, begin_positions):
    """Ask whether PATTERN matches a factor of the indexed text.

    Matching is up to renaming of parameter symbols.  The empty pattern
    matches everywhere: its end positions are 0..n.
    """
    g, idx, obj = _load_index(indexfile)
    p = _pattern_pstring(obj, g, pattern)
    if do_locate or begin_positions:
        if idx is None:
            idx = build_occurrence_index(g)
        ends = locate(idx, p)
        if begin_positions:
            result = [e - len(p) + 1 for e in ends]
        else:
            result = list(ends)
        click.echo(json.dumps(result))
    else:
        click.echo("true" if p_match_query(g, p) else "false")


# ---------------------------------------------------------------------------
# dot export


def _dot_pdawg(g: Pdawg) -> list[str]:
    names = node_longest_codes(g)
    lines = ["digraph pdawg {", "  rankdir=LR;", "  node [shape=circle fontsize=10];"]
    for u in g.node_ids():
        label = "ε" if u == g.source else _codes_str(names[u], g.alphabet)
        shape = " shape=doublecircle" if u == g.sink else ""
        lines.append(f"  n{u - 1} [label={_gv_quote(label)}{shape}];")
    for u in g.node_ids():
        for lbl, tgt in sorted(
            g.edges[u].items(), key=lambda e: label_sort_key(e[0], g.alphabet)
        ):
            style = ' color="black:invis:black"' if g.is_primary(u, tgt) else ""
            lines.append(
                f"  n{u - 1} -> n{tgt - 1}"
                f" [label={_gv_quote(_label_str(lbl, g.alphabet))}{style}];"
            )
    for u in g.node_ids():
        if u != g.source:
            lines.append(
                f"  n{u - 1} -> n{g.slinks[u] - 1} [style=dashed constraint=false];"
            )
    lines.append("}")
    return lines


def _dot_pstree(tree: PSTree) -> list[str]:
    strings = tree.node_strings()
    lines = ["digraph pstree {", "  node [shape=circle fontsize=10];"]
    for v in range(tree.node_count()):
        label = "ε" if v == tree.root else _codes_str(strings[v], tree.alphabet)
        shape = " shape=doublecircle" if tree.is_suffix[v] else ""
        lines.append(f"  t{v} [label={_gv_quote(label)}{shape}];")
    for v in range(tree.node_count()):
        for lab, child in tree.sorted_children(v):
            lines.append(
                f"  t{v} -> t{child} [label={_gv_quote(_codes_str(lab, tree.alphabet))}];"
            )
    lines.append("}")
    return lines


def _dot_psauto(g: Pdawg) -> list[str]:
    aut = build_psauto(PvString._from_codes(g.text_codes, g.alphabet))
    lines = ["digraph psauto {", "  rankdir=LR;", "  node [shape=circle fontsize=10];"]
    for q in range(aut.state_count()):
        shape = "doublecircle" if aut.accepting[q] else "circle"
        lines.append(f"  s{q} [shape={shape}];")
    for q in range(aut.state_count()):
        for lbl, r in sorted(
            aut.transitions[q].items(), key=lambda e: label_sort_key(e[0], g.alphabet)
        ):
            lines.append(
                f"  s{q} -> s{r} [label={_gv_quote(_label_str(lbl, g.alphabet))}];"
            )
    lines.append("}")
    return lines


@main.command("dot")
@click.argument("indexfile", type=click.Path(exists=True, dir_okay=False, readable=True))
@click.option("--structure", type=click.Choice(["pdawg", "pstree", "psauto"]), default="pdawg", show_default=True, help="Which structure to render.")
@click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None, help="Write DOT here instead of stdout.")
def cmd_dot(indexfile, structure, out):
    """Render the index (or a derived structure) as deterministic Graphviz.

    Primary edges are drawn doubled, secondary edges solid, suffix links
    dashed.  The pstree view shows the suffix tree of the reversed text;
    psauto rebuilds the minimized factor automaton from the stored text.
    """
    g, _idx, _obj = _load_index(indexfile)
    if structure == "pdawg":
        lines = _dot_pdawg(g)
    elif structure == "pstree":
        lines = _dot_pstree(suffix_link_tree_as_pstree(g))
    else:
        lines = _dot_psauto(g)
    payload = "\n".join(lines) + "\n"
    if out is not None:
        Path(out).write_text(payload, "utf-8")
    else:
        click.echo(payload, nl=False)


# ---------------------------------------------------------------------------
# selftest


def _minimize(raw: str, still_fails) -> str:
    """Greedily delete symbols while the predicate keeps failing."""
    cur = raw
    changed = True
    while changed:
        changed = False
        for i in range(len(cur)):
            cand = cur[:i] + cur[i + 1 :]
            if cand and still_fails(cand):
                cur = cand
                changed = True
                break
    return cur


def _exhaustive_texts(sigma: str, pi: str, max_len: int):
    alpha = sigma + pi
    for ln in range(1, max_len + 1):
        for tup in itertools.product(alpha, repeat=ln):
            yield "".join(tup)


def _random_texts(rng: random.Random, sigma: str, pi: str, count: int, max_len: int):
    alpha = sigma + pi
    for _ in range(count):
        n = rng.randint(1, max_len)
        yield "".join(rng.choice(alpha) for _ in range(n))


def _pstring(raw: str, sigma: str) -> PString:
    return PString(raw, Alphabet.from_text(raw, set(sigma)))


def _check_encodings(raw: str, sigma: str) -> str | None:
    p = _pstring(raw, sigma)
    pv = p.prev()
    if pv_reverse(pv_reverse(pv)) != pv:
        return "reversal applied twice is not the identity"
    if prev_decode(pv).prev().codes != pv.codes:
        return "decode does not invert the encoding"
    if re_encode(pv) != pv:
        return "whole-text re-encoding is not a fixpoint"
    n = len(pv)
    for i in range(1, n + 1):
        for j in range(i - 1, n + 1):
            win = pv.window(i, j)
            if re_encode(win) != win:
                return f"window ({i},{j}) re-encoding is not a fixpoint"
    return None


def _check_pdawg(raw: str, sigma: str) -> str | None:
    p = _pstring(raw, sigma)
    g, _stats = build_online(p)
    oracle = build_oracle_pdawg(p)
    if canonical_form(g) != oracle.canonical_form():
        return "online automaton differs from the class-enumeration oracle"
    n = len(raw)
    if n >= 3:
        if g.node_count() > 2 * n - 1:
            return f"{g.node_count()} nodes exceeds 2n-1"
        if g.edge_count() > 3 * n - 4:
            return f"{g.edge_count()} edges exceeds 3n-4"
    return None


def _check_matching(raw: str, sigma: str, rng: random.Random) -> str | None:
    p = _pstring(raw, sigma)
    pv = p.prev()
    g, _stats = build_online(p)
    idx = build_occurrence_index(g)
    n = len(pv)
    factors = build_pstrie(pv).factor_strings()
    if locate(idx, pv.window(1, 0)) != tuple(range(n + 1)):
        return "empty pattern should end at every position 0..n"
    seen = set()
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            win = pv.window(i, j)
            if win.codes in seen:
                continue
            seen.add(win.codes)
            if not p_match_query(g, win):
                return f"factor at ({i},{j}) reported absent"
            if locate(idx, win) != scan_occurrences(pv, win):
                return f"locate disagrees with the scan at ({i},{j})"
    alpha = sigma + "xyz"
    for _ in range(20):
        m = rng.randint(1, n + 2)
        kraw = "".join(rng.choice(alpha) for _ in range(m))
        kp = _pstring(kraw, sigma)
        expected = kp.prev().codes in factors and len(kraw) <= n
        if p_match_query(g, kp) != expected:
            return f"membership of {kraw!r} should be {expected}"
        ends = locate(idx, kp)
        if expected != bool(ends):
            return f"locate of {kraw!r} disagrees with membership"
    return None


def _check_duality(raw: str, sigma: str) -> str | None:
    p = _pstring(raw, sigma)
    g, _stats = build_online(p)
    tree = suffix_link_tree_as_pstree(g)
    report = verify_duality(g, tree)
    if not report.all_pass():
        failed = sorted(name for name, item in report.items.items() if not item["pass"])
        return f"duality items failed: {failed}"
    return None


def _check_rtl(raw: str, sigma: str) -> str | None:
    p = _pstring(raw, sigma)
    pv = p.prev()
    n = len(pv)
    tree = None
    for i, tree, counters in rtl_steps(pv):
        ref = build_pstree_naive(pv.window(n - i + 1, n))
        if not tree_equal(tree, ref):
            return f"tree after {i} prepended symbols differs from the oracle"
        if counters.per_step_redirections[-1] > 1:
            return f"step {i} redirected {counters.per_step_redirections[-1]} links"
    g = upward_links_to_pdawg(tree)
    ref_g, _stats = build_online(pv_reverse(pv))
    if canonical_form(g) != canonical_form(ref_g):
        return "stored links do not spell the online automaton"
    return None


def _t_k(k: int) -> PString:
    block = [s for i in range(1, k + 1) for s in (f"x{i}", f"a{i}")]
    sigma = [f"a{i}" for i in range(1, k + 1)]
    pi = [f"x{i}" for i in range(1, k + 1)]
    return PString(block + block, Alphabet(sigma, pi))


def _check_bounds(max_k: int, max_n: int) -> str | None:
    for k in range(2, max_k + 1):
        t = _t_k(k)
        states = build_psauto(t).state_count()
        if states < k * (k - 1) // 2:
            return f"minimal DFA for the separation family k={k} is too small"
        g, _stats = build_online(t)
        if g.node_count() > 2 * 4 * k - 1:
            return f"automaton for the separation family k={k} is too large"
    al = Alphabet("abc", "xy")
    for n in range(3, max_n + 1):
        g, _stats = build_online(PString("a" + "b" * (n - 1), al))
        if g.node_count() != 2 * n - 1:
            return f"a·b^{n - 1} misses the node-count ceiling"
        g, _stats = build_online(PString("a" + "b" * (n - 2) + "c", al))
        if g.edge_count() != 3 * n - 4:
            return f"a·b^{n - 2}·c misses the edge-count ceiling"
    return None


SUITES = ("encodings", "pdawg", "matching", "duality", "rtl", "bounds")


@main.command("selftest")
@click.option("--max-len", default=6, show_default=True, help="Exhaustive-case length budget.")
@click.option("--seed", default=0, show_default=True, help="Random generator seed.")
@click.option("--suites", default=",".join(SUITES), show_default=True, help="Comma-separated suite names.")
def cmd_selftest(max_len, seed, suites):
    """Cross-check the fast structures against brute-force oracles.

    Exits 1 with a minimized witness on the first property failure.
    """
    chosen = [s.strip() for s in suites.split(",") if s.strip()]
    unknown = [s for s in chosen if s not in SUITES]
    if unknown:
        raise click.UsageError(f"unknown suites: {unknown}")

    def run_texts(name: str, texts, check) -> int:
        count = 0
        for raw in texts:
            count += 1
            detail = check(raw)
            if detail is not None:
                witness = _minimize(raw, lambda r: check(r) is not None)
                click.echo(
                    json.dumps(
                        {
                            "suite": name,
                            "witness": witness,
                            "detail": check(witness) or detail,
                        }
                    )
                )
                sys.exit(EXIT_PROPERTY)
        return count

    rng = random.Random(seed)
    for name in chosen:
        if name == "bounds":
            detail = _check_bounds(max_k=6, max_n=max(12, 4 * max_len))
            if detail is not None:
                click.echo(json.dumps({"suite": name, "witness": None, "detail": detail}))
                sys.exit(EXIT_PROPERTY)
            click.echo("suite=bounds ok")
            continue
        exhaustive_len = max_len if name in ("encodings", "pdawg") else min(max_len, 5)
        texts = list(_exhaustive_texts("a", "xy", exhaustive_len))
        texts += list(_random_texts(rng, "ab", "xyz", 40, 3 * max_len))
        if name == "encodings":
            count = run_texts(name, texts, lambda r: _check_encodings(r, "ab"))
        elif name == "pdawg":
            count = run_texts(name, texts, lambda r: _check_pdawg(r, "ab"))
        elif name == "matching":
            count = run_texts(name, texts, lambda r: _check_matching(r, "ab", rng))
        elif name == "duality":
            count = run_texts(name, texts, lambda r: _check_duality(r, "ab"))
        else:
            count = run_texts(name, texts, lambda r: _check_rtl(r, "ab"))
        click.echo(f"suite={name} ok ({count} texts)")
    click.echo("all selected suites passed")


if __name__ == "__main__":
    main()
