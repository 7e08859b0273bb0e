#!/usr/bin/env python3
"""Writes the scenario catalog under data/catalog (fixed seed, deterministic)."""
import json
import pathlib
import random

OUT = pathlib.Path(__file__).resolve().parent.parent / "data" / "catalog"
ALL = ["all"]


def dual_numbers():
    return {"name": "k[x]/x^2",
            "structure": {"basis": ["1", "x"],
                          "mult": [[["1", "0"], ["0", "1"]], [["0", "1"], ["0", "0"]]],
                          "unit": ["1", "0"]}}


def cyclic(n, name=None):
    vs = [str(i + 1) for i in range(n)]
    arrows = [{"name": f"a{i + 1}", "from": vs[i], "to": vs[(i + 1) % n]} for i in range(n)]
    return {"name": name or f"N{n}", "quiver": {"vertices": vs, "arrows": arrows, "zero_length": 2}}


def write(name, doc):
    (OUT / f"{name}.json").write_text(json.dumps(doc, indent=2) + "\n")


def nakayama_doc(name, n, t, r, field):
    mods = [{"name": "N", "kind": "regular"}]
    X = [{"module": "N", "projective_part": True}]
    for i in range(1, n + 1):
        if i % (t - 1) == r % (t - 1):
            mods.append({"name": f"S{i}", "kind": "simple", "vertex": str(i)})
            X.append({"module": f"S{i}"})
    return {"field": field, "algebra": cyclic(n), "modules": mods,
            "scenario": {"name": name, "X": X, "t": [t], "audits": ALL}}


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    write("fix_ctx1", {
        "field": "rational", "algebra": dual_numbers(),
        "modules": [{"name": "A", "kind": "regular"}, {"name": "S", "kind": "simple", "vertex": "0"}],
        "scenario": {"name": "ctx1", "X": [{"module": "A", "projective_part": True}, {"module": "S"}],
                     "t": [2], "audits": ALL}})
    simples3 = [{"name": f"S{i}", "kind": "simple", "vertex": str(i)} for i in (1, 2, 3)]
    write("fix_ctx3", {
        "field": "rational", "algebra": cyclic(3),
        "modules": [{"name": "N", "kind": "regular"}] + simples3,
        "scenario": {"name": "ctx3", "X": [{"module": "N", "projective_part": True}] +
                     [{"module": f"S{i}"} for i in (1, 2, 3)], "t": [2, 3], "audits": ALL}})
    write("fix_ctx3b", {
        "field": "rational", "algebra": cyclic(3),
        "modules": [{"name": "N", "kind": "regular"}, simples3[0]],
        "scenario": {"name": "ctx3b", "X": [{"module": "N", "projective_part": True}, {"module": "S1"}],
                     "t": [2, 3, 4], "audits": ALL}})
    write("fix_a_to_k", {
        "field": "rational", "algebra": dual_numbers(), "modules": [],
        "scenario": {"name": "A -> k", "audits": ["tor", "twist"], "surjection": {"ideal": "radical"}}})

    rng = random.Random(20240611)
    seen = set()
    while len(seen) < 8:
        n = rng.randint(2, 5)
        t = rng.randint(2, 5)
        r = rng.randint(0, t - 2)
        p = rng.choice([0, 0, 5, 7])
        if (n, t, r) in seen:
            continue
        seen.add((n, t, r))
        field = "rational" if p == 0 else {"prime": p}
        name = f"nak_n{n}_t{t}_r{r}"
        write(name, nakayama_doc(name, n, t, r, field))


if __name__ == "__main__":
    main()
