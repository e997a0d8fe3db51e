"""Generated classes with known cohesion structure.

Used to check the metrics against closed forms and to replay the
system-level evaluation on corpora whose right answers are known by
construction.
"""

from __future__ import annotations

import random
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from .model import AttributeModel, ClassModel, MethodModel


def chain_class(n: int, name: Optional[str] = None) -> ClassModel:
    """n methods where method i and method i+1 share exactly variable v_i."""
    if n < 1:
        raise ValueError("n must be >= 1")
    attrs = [AttributeModel(f"v{i}") for i in range(1, n)]
    methods = []
    for i in range(1, n + 1):
        refs = set()
        if i > 1:
            refs.add(f"v{i - 1}")
        if i < n:
            refs.add(f"v{i}")
        methods.append(MethodModel(f"m{i}", is_public=True, referenced_attributes=refs))
    return ClassModel(name or f"Chain{n}", attributes=attrs, methods=methods)


def _cluster_sizes(rng: random.Random, clusters: int, lo: int, hi: int) -> List[int]:
    # Sizes for which disjoint pairs outnumber sharing pairs, so LCOM > 0.
    while True:
        sizes = [rng.randint(lo, hi) for _ in range(clusters)]
        shared = sum(comb(s, 2) for s in sizes)
        total = comb(sum(sizes), 2)
        if total - shared > shared:
            return sizes


def _clustered_class(
    rng: random.Random, name: str, sizes: Sequence[int], all_public: bool
) -> ClassModel:
    attrs: List[AttributeModel] = []
    methods: List[MethodModel] = []
    serial = 0
    for c, size in enumerate(sizes):
        hub = f"hub{c}"
        extras = [f"f{c}_{k}" for k in range(rng.randint(0, 3))]
        attrs.append(AttributeModel(hub, type_name="int"))
        attrs.extend(AttributeModel(e, type_name="int") for e in extras)
        for _ in range(size):
            refs = {hub} | set(rng.sample(extras, rng.randint(0, len(extras))))
            public = all_public or rng.random() < 0.6
            methods.append(MethodModel(f"op{serial}", is_public=public, referenced_attributes=refs))
            serial += 1
    ctor = MethodModel(
        name.rsplit(".", 1)[-1],
        is_public=True,
        is_constructor=True,
        referenced_attributes={a.name for a in attrs},
    )
    return ClassModel(name, attributes=attrs, methods=[ctor] + methods)


def labeled_corpus(
    n_cohesive: int = 60, n_uncohesive: int = 40, seed: int = 0, package: str = "synth"
) -> Tuple[List[ClassModel], Dict[str, bool]]:
    """Classes designed cohesive or uncohesive, plus the design label per class.

    Cohesive classes have one attribute every method touches, so every
    method pair shares and LCOM is 0.  Uncohesive classes have two or three
    such clusters with no attribute in common, at least five public methods
    and cluster sizes chosen so LCOM is positive.  Constructors touch every
    attribute, which is why the default policy leaves them out.  The label is
    True for uncohesive.
    """
    rng = random.Random(seed)
    classes: List[ClassModel] = []
    labels: Dict[str, bool] = {}
    kinds = [False] * n_cohesive + [True] * n_uncohesive
    rng.shuffle(kinds)
    for i, uncohesive in enumerate(kinds):
        name = f"{package}.C{i:04d}"
        if uncohesive:
            sizes = _cluster_sizes(rng, rng.randint(2, 3), 3, 6)
            cls = _clustered_class(rng, name, sizes, all_public=True)
        else:
            cls = _clustered_class(rng, name, [rng.randint(1, 9)], all_public=False)
        classes.append(cls)
        labels[name] = uncohesive
    return classes, labels


def random_system(
    n_classes: int, uncohesive_share: float, seed: int = 0, package: str = "synth"
) -> Tuple[List[ClassModel], Dict[str, bool]]:
    """Labeled corpus with roughly ``uncohesive_share`` of the classes uncohesive."""
    bad = round(n_classes * uncohesive_share)
    return labeled_corpus(n_classes - bad, bad, seed=seed, package=package)
