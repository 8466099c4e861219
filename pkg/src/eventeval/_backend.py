"""Select the compiled kernels when available, else the pure-Python ones.

Set ``EVENTEVAL_PURE=1`` to force the fallback.
"""

import os

from . import _pykernels as pure

BACKEND = "python"
kernels = pure

if os.environ.get("EVENTEVAL_PURE") != "1":
    try:
        from . import _ckernels as compiled
    except ImportError:  # pragma: no cover - depends on build
        compiled = None
    else:
        kernels = compiled
        BACKEND = "cython"
else:
    compiled = None

RULE_OPTIMAL = pure.RULE_OPTIMAL
RULE_GREEDY = pure.RULE_GREEDY
RULE_STRICT = pure.RULE_STRICT
