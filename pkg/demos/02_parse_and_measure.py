"""
Measuring a small Java code base
================================

The frontend reads Java-like sources into class models; the metric engine
then computes the whole suite per class.  The fixture corpus under
``tests/fixtures/corpus`` is a toy shop and billing system.
"""

from pathlib import Path

from lcomkit import analyze_corpus, build_corpus
from lcomkit.frontend import load_inputs
from lcomkit.report import metric_table
from lcomkit.serialize import records_to_table

root = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "corpus"

# Diagnostics never stop the run.  Nested and anonymous classes are skipped
# with a warning, broken members with an error.
classes, diagnostics = load_inputs([root])
for d in diagnostics:
    print(d)

corpus = build_corpus(classes)
records = analyze_corpus(corpus)
print(records_to_table(records))

# Inheritance and coupling come from the linked corpus.
warehouse = corpus.get("com.acme.shop.Warehouse")
print("Warehouse extends", warehouse.superclass_name, "ancestors:", corpus.ancestors(warehouse.name))

# A field used through this. but declared in the superclass is kept in the
# method's references so coupling sees it; the own-attribute LCOM drops it.
print("undeclared refs:", warehouse.undeclared_references())

# Column summaries for the whole system.
for column, stats in metric_table(records).items():
    print(f"{column:>12}  mean={stats.mean:7.3f}  median={stats.median:6.2f}  max={stats.max:6.1f}")
