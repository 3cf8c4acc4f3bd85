"""Coherent-group analysis of rank data by taxicab correspondence analysis."""

try:
    from riffle._riffle import *  # installed package layout
    from riffle._riffle import __doc__ as _core_doc
except ImportError:  # in-tree build: module sits next to the package on sys.path
    from _riffle import *
    from _riffle import __doc__ as _core_doc

__version__ = "0.1.0"
