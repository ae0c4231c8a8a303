"""Statistics of prime-factor counts of shifted integer pairs."""

try:
    from ._core import *  # noqa: F401,F403
    from ._core import __doc__ as _core_doc  # noqa: F401
except ImportError:
    # Build-tree layout: the extension sits next to the package on sys.path.
    from _core import *  # noqa: F401,F403

__version__ = "0.1.0"
