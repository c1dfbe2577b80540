"""From weights to scores, grades and ranks."""
# %%
import numpy as np

from compindex import JudgmentMatrix
from compindex.scoring import IMPACT_5BAND, US_4BAND, GradeScale, evaluate

rng = np.random.default_rng(7)
x = JudgmentMatrix.from_array(
    rng.uniform(0, 100, size=(6, 5)),
    objects=[f"site-{i}" for i in range(1, 7)],
)

# %% The one-call path: normalize, weight, score, grade and rank.
for card in evaluate(x, US_4BAND):
    print(card.rank, card.object, card.display_score, card.grade)

# %% Same data on the five-band scale.
for card in evaluate(x, IMPACT_5BAND):
    print(card.rank, card.object, card.display_score, card.grade)

# %% Custom scales are checked for gaps and overlaps when built.
pass_fail = GradeScale.from_pairs([0, 50, 100], ["fail", "pass"], name="pass-fail")
print([(c.object, c.grade) for c in evaluate(x, pass_fail)])

try:
    GradeScale(((0, 40, "low"), (50, 100, "high")))
except ValueError as exc:
    print("rejected:", exc)
