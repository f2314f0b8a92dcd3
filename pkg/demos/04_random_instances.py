"""
Random partial actions
======================

Global actions of X^2 x H are built by permuting blocks; restricting to a
central idempotent makes them partial.  The fuzz harness checks every
invariant on a seeded batch.
"""

import random

from skewgroupoid import run_fuzz, run_pipeline
from skewgroupoid.action import check_lemma31
from skewgroupoid.generate import GROUPS, global_block_action, restrict_to_ideal

rng = random.Random(4)
pa, layout = global_block_action(["p", "q"], GROUPS["Z2"], "Qi", 2, rng)
print("global action: dim A =", pa.algebra.dim, "global:", check_lemma31(pa).facts["global"])

# keep one block at p and one at q
e = tuple(a + b for a, b in zip(layout.block_unit(0, 0), layout.block_unit(1, 1)))
part = restrict_to_ideal(pa, e)
print("restricted: dim A =", part.algebra.dim, "global:", check_lemma31(part).facts["global"])

report = run_pipeline(part, name="restricted")
print(report.to_text())

summary = run_fuzz(seed=0, count=10)
print(summary.to_text())
