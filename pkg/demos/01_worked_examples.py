"""
Counting disjoint and sharing method pairs
==========================================

LCOM looks at every unordered pair of methods and asks whether the two
methods touch a common attribute.  Pairs that do not are counted in P, pairs
that do are counted in Q, and LCOM is ``|P| - |Q|`` floored at zero.
"""

from lcomkit import AttributeModel, ClassModel, MethodModel, build_corpus, connectivity, lcom2, lcom_ck, nlcom

# Three methods: the first two share a, b and e, the third touches
# nothing the others use.
three = ClassModel(
    "Three",
    attributes=[AttributeModel(n) for n in "abcdexyz"],
    methods=[
        MethodModel("m1", referenced_attributes=set("abcde")),
        MethodModel("m2", referenced_attributes=set("abe")),
        MethodModel("m3", referenced_attributes=set("xyz")),
    ],
)
value, evidence = lcom_ck(three)
print("LCOM =", value)
print("disjoint pairs:", sorted(evidence.disjoint_pairs))
print("sharing pairs: ", sorted(evidence.sharing_pairs))

# The evidence is what makes the number explainable: two disjoint pairs
# against one sharing pair.
print(f"P={evidence.p} Q={evidence.q}")

# LCOM cannot tell a chain apart from a star when both have the same number
# of sharing pairs.  The normalized score and connectivity give more shape.
print(f"nlcom={nlcom(three):.4f} connectivity={connectivity(three):.4f}")

# A class whose methods touch no attributes at all has LCOM 0 by definition,
# even though no pair shares anything.
empty = ClassModel("Empty", methods=[MethodModel("a"), MethodModel("b"), MethodModel("c")])
print("all-empty LCOM =", lcom_ck(empty)[0])

# The refined variant only counts attributes the class declares itself.
# Two methods that meet only on an inherited field are disjoint for it.
base = ClassModel("Base", attributes=[AttributeModel("shared")])
sub = ClassModel(
    "Sub",
    "Base",
    attributes=[AttributeModel("own1"), AttributeModel("own2")],
    methods=[
        MethodModel("f", referenced_attributes={"shared", "own1"}),
        MethodModel("g", referenced_attributes={"shared", "own2"}),
    ],
)
corpus = build_corpus([base, sub])
print("flattened LCOM =", lcom_ck(sub)[0], " own-attribute LCOM =", lcom2(sub, corpus)[0])
