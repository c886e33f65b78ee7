"""Braess paradox vulnerability detection for single-commodity networks."""
from braess.analysis.detector import Verdict, is_vulnerable
from braess.core.graph_core import Net
from braess.core.netfile import parse

__all__ = ["Net", "Verdict", "is_vulnerable", "parse"]
