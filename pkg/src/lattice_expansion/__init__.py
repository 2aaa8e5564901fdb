"""Exact enumeration and formal-series identities for lattice trees and lattice animals."""

__version__ = "0.1.0"
