"""Entropy weights for a small judgment matrix.

Five hypothetical cities are scored on four indicators. Commute time is a
cost (lower is better); everything else is a benefit.
"""
# %%
import numpy as np

from compindex import JudgmentMatrix, minmax_normalize
from compindex.entropy import percentages, weights_from_normalized

values = np.array([
    [72.0, 31.0, 0.61, 45.0],
    [65.0, 24.0, 0.58, 52.0],
    [80.0, 40.0, 0.70, 38.0],
    [58.0, 22.0, 0.49, 60.0],
    [69.0, 29.0, 0.66, 41.0],
])
x = JudgmentMatrix.from_array(
    values,
    objects=["Avon", "Brill", "Corve", "Deal", "Esk"],
    indicators=["income", "commute", "green_share", "rent_burden"],
    directions=["benefit", "cost", "benefit", "cost"],
)
print(x.shape)

# %% Normalize. Cost columns are mirrored so 1 always means "best".
r = minmax_normalize(x)
print(np.round(r.values, 3))

# %% Entropy and weights. Low entropy means the column separates objects well.
w, h = weights_from_normalized(r.values)
for name, hj, wj, pct in zip(x.names, h, w, percentages(w)):
    print(f"{name:12s} H={hj:.4f}  w={wj:.4f}  {pct}%")

# %% The displayed percentages always add up to exactly 100.00.
print(sum(percentages(w)))
