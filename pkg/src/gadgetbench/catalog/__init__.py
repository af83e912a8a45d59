"""Catalog of gadgets and transcribed constructions, with batch verification."""

from .gadgets import GADGETS, gadget, list_gadgets
from .store import Entry, entries, entry, list_constructions, verify_all, VerifyRow

__all__ = [
    "Entry",
    "GADGETS",
    "VerifyRow",
    "entries",
    "entry",
    "gadget",
    "list_constructions",
    "list_gadgets",
    "verify_all",
]
