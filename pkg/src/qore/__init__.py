"""qore: exact verification of separating Ore sets for quantum algebras.

Subpackages build up from an exact scalar kernel (rational functions in q)
through root data, Weyl combinatorics, a normal-form engine for the quantized
enveloping algebra, highest-weight modules, and the two verification stacks:
matrix-coefficient algebras (quantized function algebras) and quantum
Schubert cell algebras.  The CLI entry point is qore.cli:main.
"""

from ._kernel import KERNEL_NAME as kernel_name

__version__ = "0.1.0"

__all__ = ["kernel_name", "__version__"]
