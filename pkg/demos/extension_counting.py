"""
Counting characters that extend
===============================

For a normal subgroup with cyclic quotient, five differently-defined
quantities coincide: classes in a generating coset, character orbits not
vanishing there, orbits of full length, characters restricting
irreducibly (per index), and characters of the subgroup that extend to
the whole group.  A separate criterion decides whether any nontrivial
character extends: that happens exactly when no conjugacy class of the
group has as many elements as the subgroup.
"""

from cosetchar.corpus import analysis_for, corpus_specs

for spec in corpus_specs():
    analysis = analysis_for(spec)
    Q = analysis.quotient
    if not Q.is_cyclic:
        print(f"{spec.label}: quotient of order {Q.size} is not cyclic, skipped")
        continue
    counts = analysis.extendability_counts(Q.generator)
    exists, (kind, idx) = analysis.nontrivial_extension()
    verdict = "a nontrivial character extends" if exists else "only the trivial one"
    print(f"{spec.label}: five counts all equal {counts[0]}; {verdict} "
          f"({kind} {idx})")

# the counts are certified equal during computation; any disagreement
# would have raised an internal-check error above
print("\nall five definitions agreed on every pair")
