"""
Where would a class split?
==========================

Methods that share attributes belong together.  The connected components of
the sharing graph are candidate classes; a split is only suggested when
there are at least two components, LCOM is positive and the class has a
reasonable public surface.
"""

from lcomkit import ClassModel, MethodModel, MethodPolicy, suggest_split
from lcomkit.synthetic import chain_class

# A report printer that also formats numbers.
printer = ClassModel(
    "ReportPrinter",
    methods=[
        MethodModel("setHeader", 1, is_public=True, referenced_attributes={"header"}),
        MethodModel("renderHeader", is_public=True, referenced_attributes={"header", "width"}),
        MethodModel("renderFooter", is_public=True, referenced_attributes={"width"}),
        MethodModel("setDecimals", 1, is_public=True, referenced_attributes={"decimals"}),
        MethodModel("formatNumber", 1, is_public=True, referenced_attributes={"decimals", "comma"}),
        MethodModel("useComma", is_public=True, referenced_attributes={"comma"}),
    ],
)
s = suggest_split(printer)
print(f"LCOM={s.lcom} NPM={s.npm} recommended={s.recommended}")
for i, group in enumerate(s.groups, 1):
    print(f"  group {i}: {', '.join(group)}")

# A chain is connected end to end, so it never splits even when LCOM is large.
chain = chain_class(10)
c = suggest_split(chain)
print(f"10-chain: LCOM={c.lcom}, groups={len(c.groups)}, recommended={c.recommended}")

# A constructor usually touches every field and glues the groups together.
# It is left out by default; counting it hides the split.
ctor = MethodModel(
    "ReportPrinter", is_public=True, is_constructor=True,
    referenced_attributes={"header", "width", "decimals", "comma"},
)
with_ctor = ClassModel("ReportPrinter", attributes=printer.attributes, methods=(ctor,) + printer.methods)
print("default policy groups:", len(suggest_split(with_ctor).groups))
print("with constructors:    ", len(suggest_split(with_ctor, MethodPolicy(include_constructors=True)).groups))
