"""identlim: identification-in-the-limit learning games plus model-ecosystem analytics.

Subpackages cover deterministic formal languages, tell-tale construction,
teacher/learner simulations (fair and adversarial), probabilistic languages
with a likelihood-ratio contrast, ecosystem CSV ingestion, hypothesis-space
growth fitting, and inference compute-cost scenarios.
"""

__version__ = "0.1.0"
