#!/usr/bin/env python3
"""Regenerates the toy-domain golden files from first principles.

Works only from the data files and the frozen serialized parses
(toy_parses.tsv); nothing here calls the C++ library. Run from anywhere:

    python3 tests/golden/make_goldens.py
"""

import re
import sys
from collections import OrderedDict, defaultdict
from fractions import Fraction
from pathlib import Path

HERE = Path(__file__).resolve().parent
ROOT = HERE.parent.parent
TOY = ROOT / "data" / "toy"

EXCLUDED = {"and", "equal", "exists", "has_aspect", "qterm", "the"}
SAMPLE_CAP = 5


# ---------------------------------------------------------------- tokens

TOKEN = re.compile(r"\s*('(?:[^'\\]|\\.)*'|[A-Za-z_][A-Za-z0-9_]*|-?[0-9]+|[()\[\],;])")


def tokenize(text):
    pos, out = 0, []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = TOKEN.match(text, pos)
        if not m:
            raise ValueError("bad token at %d in %r" % (pos, text))
        out.append(m.group(1))
        pos = m.end()
    return out


class Stream:
    def __init__(self, tokens):
        self.t, self.i = tokens, 0

    def peek(self, k=0):
        return self.t[self.i + k] if self.i + k < len(self.t) else None

    def take(self, expect=None):
        tok = self.t[self.i]
        if expect is not None and tok != expect:
            raise ValueError("expected %s got %s" % (expect, tok))
        self.i += 1
        return tok


def bare(name):
    return name[1:-1] if name.startswith("'") else name


def is_var(name):
    return not name.startswith("'") and (name[0].isupper() or name[0] == "_")


# ---------------------------------------------------------------- sorts
# ("atom", name) | ("var", name) | ("func", [args], result)

def parse_sort(s):
    tok = s.peek()
    if tok == "[":
        s.take("[")
        name = bare(s.take())
        s.take("]")
        return ("atom", name)
    if tok == "(":
        s.take("(")
        s.take("[")
        args = []
        while s.peek() != "]":
            args.append(parse_sort(s))
            if s.peek() == ",":
                s.take(",")
        s.take("]")
        s.take(",")
        res = parse_sort(s)
        s.take(")")
        return ("func", args, res)
    return ("var", s.take())


def sort_text(t):
    if t[0] == "atom":
        return "[%s]" % quote(t[1])
    if t[0] == "var":
        return t[1]
    return "([%s],%s)" % (",".join(sort_text(a) for a in t[1]), sort_text(t[2]))


def has_var(t):
    if t[0] == "var":
        return True
    if t[0] == "func":
        return any(has_var(a) for a in t[1]) or has_var(t[2])
    return False


def quote(name):
    return name if re.fullmatch(r"[a-z][A-Za-z0-9_]*|[0-9]+", name) else "'%s'" % name


# ---------------------------------------------------------------- rules

def parse_rule_text(text):
    """sor(p, ([A..], R)) or sor(p, (R)); returns (pred, args, result)."""
    s = Stream(tokenize(text.strip().rstrip(".")))
    s.take()  # sor / signature
    s.take("(")
    pred = bare(s.take())
    s.take(",")
    s.take("(")
    zero = s.peek() == "[" and s.peek(2) == "]" and not is_var(s.peek(1)) or s.peek() != "["
    if zero:
        args, res = [], parse_sort(s)
    else:
        s.take("[")
        args = []
        while s.peek() != "]":
            args.append(parse_sort(s))
            if s.peek() == ",":
                s.take(",")
        s.take("]")
        s.take(",")
        res = parse_sort(s)
    s.take(")")
    s.take(")")
    return pred, args, res


def rule_text(pred, args, res):
    if not args:
        return "sor(%s, (%s))." % (quote(pred), sort_text(res))
    return "sor(%s, ([%s],%s))." % (quote(pred), ",".join(sort_text(a) for a in args), sort_text(res))


def clauses(path):
    text = re.sub(r"%[^\n]*", "", Path(path).read_text())
    return [c.strip() + "." for c in re.split(r"\.\s*(?:\n|$)", text) if c.strip()]


# ---------------------------------------------------------------- LFs

def parse_node(s):
    """( core ; sort ) -> dict(kind, ..., sort)."""
    s.take("(")
    tok = s.peek()
    if tok == "qterm" and s.peek(1) == "(":
        s.take()
        s.take("(")
        det = parse_node(s)
        s.take(",")
        var = parse_node(s)
        s.take(",")
        restr = parse_node(s)
        s.take(")")
        node = {"kind": "qterm", "kids": [det, var, restr]}
    elif tok == "exists" and s.peek(1) == "(":
        s.take()
        s.take("(")
        var = parse_node(s)
        s.take(",")
        body = parse_node(s)
        s.take(")")
        node = {"kind": "exists", "kids": [var, body]}
    elif tok == "[":
        s.take("[")
        pred = bare(s.take())
        kids = []
        while s.peek() == ",":
            s.take(",")
            kids.append(parse_node(s))
        s.take("]")
        node = {"kind": "pred", "pred": pred, "kids": kids}
    elif tok == "(":
        var = parse_node(s)
        body = parse_node(s)
        node = {"kind": "abs", "kids": [var, body]}
    else:
        name = s.take()
        node = {"kind": "var" if is_var(name) else "const", "name": bare(name), "kids": []}
    s.take(";")
    node["sort"] = parse_sort(s)
    s.take(")")
    return node


def parse_lf(text):
    s = Stream(tokenize(text))
    node = parse_node(s)
    if s.peek() is not None:
        raise ValueError("trailing input in LF")
    return node


def predications(node):
    """Flat list of every predication node, depth first."""
    out = []
    stack = [node]
    while stack:
        n = stack.pop()
        if n["kind"] == "pred":
            out.append(n)
        stack.extend(reversed(n["kids"]))
    return out


def instances(lf):
    out = []
    for p in predications(lf):
        if p["pred"] in EXCLUDED:
            continue
        args = [k["sort"] for k in p["kids"]]
        if not args or any(has_var(a) for a in args) or has_var(p["sort"]):
            continue
        out.append(rule_text(p["pred"], args, p["sort"]))
    return out


def read_parses(path):
    """sentence id -> list of (is_plf, lf)."""
    by_id = OrderedDict()
    for line in Path(path).read_text().splitlines():
        if not line or line.startswith("#"):
            continue
        cols = line.split("\t")
        sid = int(cols[0])
        by_id.setdefault(sid, [])
        if cols[1] == "FAIL":
            continue
        by_id[sid].append((cols[3] == "*", parse_lf(cols[4])))
    return by_id


# ---------------------------------------------------------------- harvest

def harvest(parses, mode):
    theta, lfs, sents = defaultdict(int), defaultdict(int), defaultdict(list)
    for sid, analyses in parses.items():
        for is_plf, lf in analyses:
            if mode == "plfs" and not is_plf:
                continue
            found = instances(lf)
            for r in found:
                theta[r] += 1
            for r in set(found):
                lfs[r] += 1
                if sid not in sents[r] and len(sents[r]) < SAMPLE_CAP:
                    sents[r].append(sid)
    rows = []
    for r in theta:
        pred, args, res = parse_rule_text(r)
        rows.append({"rule": r, "pred": pred, "args": args, "theta": theta[r], "lfs": lfs[r],
                     "bar": Fraction(theta[r], lfs[r]), "sents": sorted(sents[r])})
    rows.sort(key=lambda x: (x["pred"].encode(), len(x["args"]), x["rule"].encode()))
    total = sum(x["bar"] for x in rows)
    by_pred, by_arg = defaultdict(Fraction), defaultdict(Fraction)
    for x in rows:
        x["arg1"] = x["pred"] + "|" + (sort_text(x["args"][0]) if x["args"] else "")
        by_pred[x["pred"]] += x["bar"]
        by_arg[x["arg1"]] += x["bar"]
    for x in rows:
        x["p"] = x["bar"] / total
        x["p_pred"] = x["bar"] / by_pred[x["pred"]]
        x["p_arg"] = x["bar"] / by_arg[x["arg1"]]
    return rows


def dec(fr, digits=6):
    scale = 10 ** digits
    scaled = (fr.numerator * scale * 2 + fr.denominator) // (fr.denominator * 2)
    return "%d.%0*d" % (scaled // scale, digits, scaled % scale)


def harvest_text(rows):
    out = []
    for x in rows:
        out.append(x["rule"])
        out.append("%%%% theta=%d lfs=%d theta_bar=%s p=%s p_pred=%s p_arg=%s sents=[%s]" % (
            x["theta"], x["lfs"], dec(x["bar"]), dec(x["p"]), dec(x["p_pred"]), dec(x["p_arg"]),
            ",".join(str(i) for i in x["sents"])))
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------- hierarchy

def load_isa(path):
    parent = {}
    for c in clauses(path):
        m = re.fullmatch(r"isa\(\s*'?([^,']+)'?\s*,\s*'?([^)']+)'?\s*\)\.", c)
        if m:
            parent[m.group(1)] = m.group(2)
    return parent


def ancestors(parent, name):
    out = [name]
    while name in parent:
        name = parent[name]
        out.append(name)
    if out[-1] != "top":
        out.append("top")
    return set(out)


def subsumes(parent, g, s):
    if g[0] == "var":
        return True
    if s[0] == "var":
        return False
    if g[0] == "atom" and s[0] == "atom":
        return g[1] in ancestors(parent, s[1])
    if g[0] == "func" and s[0] == "func" and len(g[1]) == len(s[1]):
        return all(subsumes(parent, a, b) for a, b in zip(g[1], s[1])) and subsumes(parent, g[2], s[2])
    return False


def unifiable(parent, a, b):
    if a[0] == "var" or b[0] == "var":
        return True
    if a[0] == "atom" and b[0] == "atom":
        # in a tree two sorts meet iff one is above the other
        return a[1] in ancestors(parent, b[1]) or b[1] in ancestors(parent, a[1])
    if a[0] == "func" and b[0] == "func" and len(a[1]) == len(b[1]):
        return all(unifiable(parent, x, y) for x, y in zip(a[1], b[1])) and unifiable(parent, a[2], b[2])
    return False


def categorize(parent, corpus, refs):
    cp, ca, cr = corpus
    flags = set()
    for rp, ra, rr in refs:
        if rp != cp or len(ra) != len(ca):
            continue
        pairs = list(zip(ca, ra)) + [(cr, rr)]
        if all(sort_text(c) == sort_text(f) for c, f in pairs):
            flags.add("Exact")
        if all(subsumes(parent, f, c) for c, f in pairs):
            flags.add("SubsumedBy")
        if all(subsumes(parent, c, f) for c, f in pairs):
            flags.add("Subsumes")
        if all(unifiable(parent, c, f) for c, f in pairs):
            flags.add("Incomparable")
    for cat in ("Exact", "SubsumedBy", "Subsumes", "Incomparable"):
        if cat in flags:
            return cat
    return "Incompatible"


def mapping(parent, rows, reference_path):
    refs = []
    for c in clauses(reference_path):
        r = parse_rule_text(c)
        if r[1] and r not in refs:
            refs.append(r)
    lines, counts = [], defaultdict(int)
    hit = set()
    for x in rows:
        if not x["args"]:
            continue
        corpus = parse_rule_text(x["rule"])
        cat = categorize(parent, corpus, refs)
        counts[cat] += 1
        lines.append("%s\t%s" % (cat, x["rule"]))
        if cat == "Exact":
            hit.add(x["rule"])
    total = sum(counts.values())
    summary = ["total %d" % total, "reference_size %d" % len(refs), "distinct_exact %d" % len(hit)]
    for cat in ("Exact", "Incompatible", "SubsumedBy", "Subsumes", "Incomparable"):
        summary.append("%s %d" % (cat, counts[cat]))
    return "\n".join(lines) + "\n", "\n".join(summary) + "\n"


# ---------------------------------------------------------------- signatures

def signature_stats():
    preds = defaultdict(set)  # origin -> {(pred, arity)}
    for c in clauses(TOY / "lexicon.pl"):
        m = re.match(r"lex\(\s*'?([^,']+)'?\s*,\s*(\w+)\s*,\s*'?([^,')]+)'?", c)
        if not m:
            continue
        cat, pred = m.group(2), m.group(3)
        arity = {"noun": 1, "verb": 1, "adj": 3, "adv": 3, "prep": 2}.get(cat, 0)
        preds[cat].add((pred, arity))
    grammar = re.sub(r"%[^\n]*", "", (TOY / "grammar.pl").read_text())
    for p in re.findall(r"connect\((\w+),", grammar):
        if p != "rel":
            preds["connector"].add((p, 2))
    if re.search(r"\bnn_rel\)", grammar):
        preds["connector"].add(("n_n_rel", 2))
    for p in re.findall(r"fragment\((\w+)\)", grammar):
        preds["connector"].add((p, 1))
    for c in clauses(TOY / "hand_signatures.pl"):
        pred, args, _ = parse_rule_text(c)
        preds["hand"].add((pred, len(args)))
    seen = {}
    for origin, items in preds.items():
        for key in items:
            if key in seen:
                sys.exit("predicate %s/%d from both %s and %s" % (key + (seen[key], origin)))
            seen[key] = origin
    by_arity = defaultdict(int)
    for (_, a) in seen:
        by_arity[a] += 1
    out = ["total %d" % len(seen), "zero_arity %d" % by_arity[0], "hand_added %d" % len(preds["hand"])]
    out += ["arity_%d %d" % (a, by_arity[a]) for a in sorted(by_arity)]
    out += ["origin_%s %d" % (o, len(preds[o])) for o in sorted(preds)]
    return "\n".join(out) + "\n"


def main():
    parses = read_parses(HERE / "toy_parses.tsv")
    parent = load_isa(TOY / "hierarchy.pl")
    files = {"signature_stats.txt": signature_stats()}
    for mode in ("lfs", "plfs"):
        rows = harvest(parses, mode)
        files["harvest_%s.txt" % mode] = harvest_text(rows)
        records, summary = mapping(parent, rows, TOY / "reference.sor")
        files["mapping_%s.tsv" % mode] = records
        files["mapping_%s_summary.txt" % mode] = summary
    rows = harvest(parses, "plfs")
    threshold = Fraction(3, 10)
    files["filter_pred_0.3.txt"] = "".join(x["rule"] + "\n" for x in rows if x["p_pred"] >= threshold)
    city = [x["pred"] for x in rows if any(a[0] == "atom" and "city" in ancestors(parent, a[1])
                                            for a in x["args"])]
    files["functors_city.txt"] = "".join(p + "\n" for p in sorted(set(city)))
    for name, text in files.items():
        (HERE / name).write_text(text)
        print("wrote", name)


if __name__ == "__main__":
    main()
