#!/usr/bin/env python3
"""Generate the bundled sample treebank.

Writes a PTB-style bracketed file and a CoNLL-X dependency file with the
same sentences. Constituent trees come from a small English grammar with
function tags, -NONE- empty elements and unary chains; dependencies come
from simple head rules over the same trees. A handful of sentences are
hand-built so that a phrase carries two head words (coordination with the
second conjunct attached to the verb), and one sentence is left with a
phrase whose heads cannot be separated.

Usage: gen_sample_corpus.py OUT_PREFIX [--count N] [--seed S]
"""

import argparse
import random

LEX = {
    "DT": ["the", "a", "this", "every", "some", "that"],
    "NN": ["company", "paper", "market", "board", "price", "share", "report",
           "plan", "year", "deal", "bank", "stock", "trader", "firm", "fund",
           "rate", "loss", "unit", "index", "week"],
    "NNS": ["products", "prices", "shares", "investors", "analysts", "sales",
            "profits", "markets", "bonds", "orders", "funds", "earnings"],
    "NNP": ["Federal", "Smith", "Jones", "Acme", "Boston", "Tokyo", "IBM",
            "Treasury", "Ford", "Chicago", "Nomura", "Sony"],
    "JJ": ["new", "big", "strong", "weak", "annual", "major", "foreign",
           "quarterly", "small", "net", "early", "high"],
    "VBZ": ["sells", "buys", "reports", "expects", "owns", "makes", "plans",
            "holds", "needs"],
    "VBD": ["sold", "bought", "reported", "expected", "made", "raised",
            "posted", "cut", "held"],
    "VB": ["sell", "buy", "raise", "make", "cut", "hold"],
    "MD": ["will", "could", "may", "would"],
    "PREP": ["in", "of", "for", "with", "on", "from", "by", "at"],
    "COMP": ["because", "although", "while", "since"],
    "SAY": ["said", "says", "believes", "thinks"],
    "RB": ["also", "quickly", "sharply", "recently", "still", "already"],
    "PRP": ["it", "he", "they", "we", "she"],
    "CC": ["and", "or", "but"],
    "CD": ["10", "5", "100", "two", "three", "1989"],
}


class Node:
    def __init__(self, label, children=None, word=None):
        self.label = label
        self.children = children or []
        self.word = word

    def is_pre(self):
        return self.word is not None

    def bracket(self):
        if self.is_pre():
            return "(%s %s)" % (self.label, self.word)
        return "(%s %s)" % (self.label, " ".join(c.bracket() for c in self.children))


def pre(tag, rng, word=None):
    if word is None:
        word = rng.choice(LEX[tag])
    return Node(tag, word=word)


def none_elem(text):
    return Node("-NONE-", word=text)


class Grammar:
    def __init__(self, rng):
        self.rng = rng

    def np(self, depth, func=""):
        r = self.rng.random()
        lab = "NP" + func
        if r < 0.12:
            return Node(lab, [pre("PRP", self.rng)])
        if r < 0.22:
            return Node(lab, [pre("NNP", self.rng), pre("NNP", self.rng)])
        if r < 0.40:
            return Node(lab, [pre("DT", self.rng), pre("JJ", self.rng), pre("NN", self.rng)])
        if r < 0.50:
            return Node(lab, [pre("CD", self.rng), pre("NNS", self.rng)])
        if r < 0.58:
            return Node(lab, [pre("DT", self.rng), pre("NN", self.rng), pre("NN", self.rng)])
        if r < 0.64:
            return Node(lab, [pre("NN", self.rng), pre("CC", self.rng, "and"), pre("NNS", self.rng)])
        if r < 0.78 and depth < 3:
            return Node(lab, [self.np(depth + 1), self.pp(depth + 1)])
        if r < 0.84:
            return Node(lab, [pre("JJ", self.rng), pre("NNS", self.rng)])
        return Node(lab, [pre("DT", self.rng), pre("NN", self.rng)])

    def pp(self, depth, func=""):
        return Node("PP" + func, [pre("IN", self.rng, self.rng.choice(LEX["PREP"])),
                                  self.np(depth + 1)])

    def vp(self, depth, tense):
        r = self.rng.random()
        verb = pre(tense, self.rng)
        if r < 0.30:
            return Node("VP", [verb, self.np(depth + 1)])
        if r < 0.45 and depth < 3:
            return Node("VP", [verb, self.np(depth + 1), self.pp(depth + 1, "-LOC")])
        if r < 0.55:
            return Node("VP", [pre("MD", self.rng),
                               Node("VP", [pre("VB", self.rng), self.np(depth + 1)])])
        if r < 0.65 and depth < 2:
            say = pre(tense, self.rng, self.rng.choice(LEX["SAY"]) if tense == "VBD" else "says")
            if self.rng.random() < 0.5:
                sbar = Node("SBAR", [none_elem("0"), self.s(depth + 1, final=False)])
            else:
                sbar = Node("SBAR", [pre("IN", self.rng, "that"), self.s(depth + 1, final=False)])
            return Node("VP", [say, sbar])
        if r < 0.75:
            return Node("VP", [verb, self.np(depth + 1),
                               Node("ADVP-TMP", [pre("RB", self.rng)])])
        if r < 0.82 and depth < 2:
            return Node("VP", [verb, self.np(depth + 1),
                               Node("SBAR-PRP", [pre("IN", self.rng, self.rng.choice(LEX["COMP"])),
                                                 self.s(depth + 1, final=False)])])
        return Node("VP", [verb, self.np(depth + 1)])

    def s(self, depth, final=True):
        tense = self.rng.choice(["VBZ", "VBD"])
        kids = [self.np(depth + 1, "-SBJ"), self.vp(depth + 1, tense)]
        if self.rng.random() < 0.15:
            kids.insert(0, Node("ADVP", [pre("RB", self.rng)]))
            kids.insert(1, pre(",", self.rng, ","))
        if final:
            kids.append(pre(".", self.rng, "."))
        return Node("S", kids)


# ---------------------------------------------------------------------------
# head rules

def head_child(node):
    labs = [c.label for c in node.children]
    base = node.label.split("-")[0] if node.label not in ("-NONE-",) else node.label
    if base == "S":
        for i, l in enumerate(labs):
            if l == "VP":
                return i
        return len(labs) - 1
    if base == "VP":
        if labs[0] == "MD" and len(labs) > 1 and labs[1] == "VP":
            return 1
        for i, l in enumerate(labs):
            if l.startswith("VB"):
                return i
        for i, l in enumerate(labs):
            if l == "VP":
                return i
        return 0
    if base == "NP":
        if labs[0].startswith("NP"):
            return 0
        if "CC" in labs:
            return 0
        for i in range(len(labs) - 1, -1, -1):
            if labs[i] in ("NN", "NNS", "NNP", "PRP", "CD"):
                return i
        return len(labs) - 1
    if base == "PP":
        return 0
    if base == "SBAR":
        for i, l in enumerate(labs):
            if l == "S":
                return i
        return len(labs) - 1
    if base in ("ADVP", "ADJP"):
        return 0
    return 0


def relation(parent, child, head_tag):
    base = parent.label.split("-")[0]
    cl = child.label
    if cl in (".", ","):
        return "punct"
    if cl.startswith("NP-SBJ"):
        return "nsubj"
    if cl == "DT":
        return "det"
    if cl == "JJ":
        return "amod"
    if cl == "MD":
        return "aux"
    if cl == "CC":
        return "cc"
    if cl == "CD":
        return "num"
    if cl in ("NN", "NNP", "NNS") and base == "NP":
        return "conj" if any(c.label == "CC" for c in parent.children) else "nn"
    if cl.startswith("PP"):
        return "prep"
    if cl.startswith("ADVP"):
        return "advmod"
    if cl.startswith("SBAR"):
        return "ccomp" if cl == "SBAR" else "advcl"
    if cl == "IN" and base == "SBAR":
        return "mark"
    if cl.startswith("NP") and base == "PP":
        return "pobj"
    if cl.startswith("NP") and base == "VP":
        return "dobj"
    if cl.startswith("NP") and base == "NP":
        return "dep"
    return "dep"


def strip_none(node):
    if node.is_pre():
        return None if node.label == "-NONE-" else node
    kids = [k for k in (strip_none(c) for c in node.children) if k is not None]
    if not kids:
        return None
    return Node(node.label, kids)


def dependencies(tree):
    """Returns (tokens, heads, labels) over the -NONE- stripped tree."""
    clean = strip_none(tree)
    tokens = []

    def number(node):
        if node.is_pre():
            tokens.append((node.word, node.label))
            node.index = len(tokens)
            return
        for c in node.children:
            number(c)

    number(clean)
    heads = [0] * (len(tokens) + 1)
    labels = ["_"] * (len(tokens) + 1)

    def visit(node):
        if node.is_pre():
            return node.index
        hs = [visit(c) for c in node.children]
        hc = head_child(node)
        h = hs[hc]
        for k, c in enumerate(node.children):
            if k != hc:
                heads[hs[k]] = h
                labels[hs[k]] = relation(node, c, node.children[hc].label)
        return h

    root = visit(clean)
    heads[root] = 0
    labels[root] = "root"
    return tokens, heads[1:], labels[1:]


def conll_block(tokens, heads, labels):
    lines = []
    for i, ((w, p), h, l) in enumerate(zip(tokens, heads, labels), start=1):
        lines.append("\t".join([str(i), w, "_", p, p, "_", str(h), l, "_", "_"]))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# hand-built sentences

def federal():
    t = Node("S", [
        Node("NP-SBJ", [pre("NNP", None, "Federal"), pre("NNP", None, "Paper"),
                        pre("NNP", None, "Board")]),
        Node("VP", [pre("VBZ", None, "sells"),
                    Node("NP", [pre("NN", None, "paper"), pre("CC", None, "and"),
                                pre("NN", None, "wood"), pre("NNS", None, "products")])]),
        pre(".", None, ".")])
    toks = [("Federal", "NNP"), ("Paper", "NNP"), ("Board", "NNP"), ("sells", "VBZ"),
            ("paper", "NN"), ("and", "CC"), ("wood", "NN"), ("products", "NNS"), (".", ".")]
    heads = [3, 3, 4, 0, 4, 5, 8, 4, 4]
    labels = ["nn", "nn", "nsubj", "root", "dobj", "cc", "nn", "dobj", "punct"]
    return t, toks, heads, labels


def two_head(rng):
    """Subject + verb + flat coordinated object whose second conjunct hangs off the verb."""
    subj = rng.choice(LEX["NNP"])
    verb = rng.choice(LEX["VBZ"])
    n1, n2, n3 = rng.choice(LEX["NN"]), rng.choice(LEX["NN"]), rng.choice(LEX["NNS"])
    t = Node("S", [Node("NP-SBJ", [pre("NNP", None, subj)]),
                   Node("VP", [pre("VBZ", None, verb),
                               Node("NP", [pre("NN", None, n1), pre("CC", None, "and"),
                                           pre("NN", None, n2), pre("NNS", None, n3)])]),
                   pre(".", None, ".")])
    toks = [(subj, "NNP"), (verb, "VBZ"), (n1, "NN"), ("and", "CC"), (n2, "NN"),
            (n3, "NNS"), (".", ".")]
    heads = [2, 0, 2, 3, 6, 2, 2]
    labels = ["nsubj", "root", "dobj", "cc", "nn", "dobj", "punct"]
    return t, toks, heads, labels


def irreducible():
    t = Node("S", [Node("NP-SBJ", [pre("PRP", None, "they")]),
                   Node("VP", [pre("VBD", None, "sold"),
                               Node("NP", [Node("NP", [pre("NNS", None, "shares"),
                                                       pre("NNS", None, "bonds")]),
                                           Node("PP", [pre("IN", None, "to"),
                                                       pre("NNS", None, "investors")])])]),
                   pre(".", None, ".")])
    toks = [("they", "PRP"), ("sold", "VBD"), ("shares", "NNS"), ("bonds", "NNS"),
            ("to", "IN"), ("investors", "NNS"), (".", ".")]
    heads = [2, 0, 2, 2, 3, 5, 2]
    labels = ["nsubj", "root", "dobj", "dobj", "prep", "pobj", "punct"]
    return t, toks, heads, labels


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("prefix")
    ap.add_argument("--count", type=int, default=250)
    ap.add_argument("--seed", type=int, default=20190701)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    g = Grammar(rng)

    items = [federal()]
    special = {60: "two", 140: "two", 200: "irreducible"}
    while len(items) < args.count:
        kind = special.get(len(items))
        if kind == "two":
            items.append(two_head(rng))
            continue
        if kind == "irreducible":
            items.append(irreducible())
            continue
        tree = g.s(0)
        toks, heads, labels = dependencies(tree)
        if len(toks) > 28:
            continue
        items.append((tree, toks, heads, labels))

    with open(args.prefix + ".mrg", "w") as f:
        for tree, *_ in items:
            f.write("( " + tree.bracket() + " )\n")
    with open(args.prefix + ".conll", "w") as f:
        for _, toks, heads, labels in items:
            f.write(conll_block(toks, heads, labels))
            f.write("\n")


if __name__ == "__main__":
    main()
