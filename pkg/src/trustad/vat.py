"""VAT number verification.

The catalog only needs a format verdict, so the verifier is a one-method
interface with a deterministic offline mock.  A real client (e.g. against
the EU VIES service) can be swapped in by passing any object with the same
``check`` signature to the catalog store.
"""

from __future__ import annotations

import re
from dataclasses import dataclass


@dataclass(frozen=True)
class VatCheckResult:
    vat: str
    format_valid: bool
    checked_at: str  # ISO-8601 timestamp

    def to_dict(self) -> dict:
        return {
            "vat": self.vat,
            "format_valid": self.format_valid,
            "checked_at": self.checked_at,
        }


class MockVatVerifier:
    """Syntax-only check: two uppercase country letters followed by 2 to 12
    alphanumerics.  Always offline and deterministic."""

    _PATTERN = re.compile(r"^[A-Z]{2}[A-Za-z0-9]{2,12}$")

    def check(self, vat: str) -> bool:
        return bool(self._PATTERN.match(vat.strip()))
