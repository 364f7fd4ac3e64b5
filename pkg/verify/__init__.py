"""Ideal membership and the registry of theorem checks."""

from .membership import MembershipQuery, ideal_membership, is_member
from .registry import CheckOptions, check_theorem, list_checks

__all__ = ["MembershipQuery", "ideal_membership", "is_member", "CheckOptions", "check_theorem", "list_checks"]
