"""File-backed provider catalog.

Layout: one directory per provider id under the store root, holding

    document.stad   canonical advertisement text (the id is the first 16
                    hex chars of its sha256)
    meta.json       {"id": ..., "registered_at": "YYYY-MM-DD"}
    events.jsonl    append-only log of clicks, transactions, verifications,
                    ratings and VAT checks

Every mutation is appended to the event log and fsynced before it touches
in-memory state or is acknowledged to the caller, so a reload after a crash
replays to exactly the acknowledged state.  A single lock serializes
mutations and snapshot reads; scoring happens outside the lock on
immutable extracted profiles.
"""

from __future__ import annotations

import datetime as dt
import hashlib
import json
import os
import re
import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable

from . import engine
from .engine import AnalyticsEvidence, TrustScoreReport, WeightProfile
from .profile import ExtractError, ProviderProfile, TransactionRef, extract_profile
from .shapes import ValidationReport, validate_graph
from .stad import TrustGraph, parse_document, serialize_graph
from .vat import MockVatVerifier, VatCheckResult


class CatalogError(Exception):
    """Base class; http_status drives the service-layer mapping."""

    http_status = 500

    def payload(self) -> dict:
        return {"error": self.__class__.__name__, "message": str(self)}


class UnknownProviderError(CatalogError):
    http_status = 404


class UnknownTransactionError(CatalogError):
    http_status = 404


class DuplicateRatingError(CatalogError):
    http_status = 409


class InvalidInputError(CatalogError):
    http_status = 400


class MissingVatError(CatalogError):
    http_status = 422


class DocumentInvalidError(CatalogError):
    """Parsed but rejected: shape errors or no extractable provider."""

    http_status = 422

    def __init__(self, message: str, report: ValidationReport | None = None):
        super().__init__(message)
        self.report = report

    def payload(self) -> dict:
        data = super().payload()
        if self.report is not None:
            data["report"] = self.report.to_dict()
        return data


@dataclass
class RatingRecord:
    tx_id: str
    value: int
    rater_id: str
    rater_verified: bool

    def to_dict(self) -> dict:
        return {
            "tx_id": self.tx_id,
            "value": self.value,
            "rater_id": self.rater_id,
            "rater_verified": self.rater_verified,
        }


@dataclass
class TransactionRecord:
    tx_id: str
    provider_id: str
    customer_id: str
    date: dt.date
    confidential: bool
    verified: bool = False
    ratings: dict[str, RatingRecord] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "tx_id": self.tx_id,
            "provider_id": self.provider_id,
            "customer_id": self.customer_id,
            "date": self.date.isoformat(),
            "confidential": self.confidential,
            "verified": self.verified,
        }


@dataclass
class ProviderRecord:
    provider_id: str
    document: str
    graph: TrustGraph
    profile: ProviderProfile
    registered_at: dt.date
    profile_clicks: int = 0
    identity_verified: bool = False
    transactions: dict[str, TransactionRecord] = field(default_factory=dict)

    def metadata(self) -> dict:
        return {
            "id": self.provider_id,
            "registered_at": self.registered_at.isoformat(),
            "profile_clicks": self.profile_clicks,
            "identity_verified": self.identity_verified,
        }


_DATE_RE = re.compile(r"^\d{4}-\d{2}-\d{2}$")


def _parse_date(value: str, what: str) -> dt.date:
    if not isinstance(value, str) or not _DATE_RE.match(value):
        raise InvalidInputError(f"{what} must be a YYYY-MM-DD date")
    try:
        return dt.date.fromisoformat(value)
    except ValueError:
        raise InvalidInputError(f"{what} is not a valid calendar date: {value}")


def _utc_now() -> dt.datetime:
    return dt.datetime.now(dt.timezone.utc)


def provider_id_for(canonical_text: str) -> str:
    return hashlib.sha256(canonical_text.encode("utf-8")).hexdigest()[:16]


class CatalogStore:
    """Provider registry plus marketplace activity, persisted to ``root``."""

    def __init__(self, root: str | Path,
                 clock: Callable[[], dt.datetime] | None = None,
                 verifier=None):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self.clock = clock or _utc_now
        self.verifier = verifier or MockVatVerifier()
        self._lock = threading.Lock()
        self._providers: dict[str, ProviderRecord] = {}
        self._tx_index: dict[str, str] = {}  # tx_id -> provider_id
        self._load()

    # -- persistence ------------------------------------------------------

    def _dir(self, provider_id: str) -> Path:
        return self.root / provider_id

    def _load(self) -> None:
        for meta_path in sorted(self.root.glob("*/meta.json")):
            pdir = meta_path.parent
            meta = json.loads(meta_path.read_text(encoding="utf-8"))
            document = (pdir / "document.stad").read_text(encoding="utf-8")
            graph = parse_document(document)
            record = ProviderRecord(
                provider_id=meta["id"],
                document=document,
                graph=graph,
                profile=extract_profile(graph),
                registered_at=dt.date.fromisoformat(meta["registered_at"]),
            )
            events_path = pdir / "events.jsonl"
            if events_path.exists():
                with open(events_path, "r", encoding="utf-8") as fh:
                    for line in fh:
                        line = line.strip()
                        if line:
                            self._apply_event(record, json.loads(line))
            self._providers[record.provider_id] = record
            for tx_id in record.transactions:
                self._tx_index[tx_id] = record.provider_id

    def _apply_event(self, record: ProviderRecord, event: dict) -> None:
        kind = event["event"]
        if kind == "click":
            record.profile_clicks += 1
        elif kind == "transaction":
            tx = TransactionRecord(
                tx_id=event["tx_id"],
                provider_id=record.provider_id,
                customer_id=event["customer_id"],
                date=dt.date.fromisoformat(event["date"]),
                confidential=event["confidential"],
            )
            record.transactions[tx.tx_id] = tx
        elif kind == "verify":
            record.transactions[event["tx_id"]].verified = True
        elif kind == "rating":
            rating = RatingRecord(
                tx_id=event["tx_id"],
                value=event["value"],
                rater_id=event["rater_id"],
                rater_verified=event["rater_verified"],
            )
            record.transactions[rating.tx_id].ratings[rating.rater_id] = rating
        elif kind == "vat-check":
            if event["format_valid"]:
                record.identity_verified = True
        else:
            raise ValueError(f"unknown event kind in log: {kind!r}")

    def _append_event(self, provider_id: str, event: dict) -> None:
        # durable before acknowledgment: flush + fsync, then mutate memory
        path = self._dir(provider_id) / "events.jsonl"
        with open(path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(event, sort_keys=True) + "\n")
            fh.flush()
            os.fsync(fh.fileno())

    # -- registration and lookup ------------------------------------------

    def register(self, document: str) -> tuple[str, ValidationReport, bool]:
        """Returns (provider_id, validation report, created).

        Raises StadParseError for unparseable input and
        DocumentInvalidError when the document has shape errors or no
        extractable provider.  Byte-identical canonical documents map to the
        same id; re-registering one is a no-op.
        """
        graph = parse_document(document)
        report = validate_graph(graph)
        if not report.valid:
            raise DocumentInvalidError(
                f"document has {len(report.errors)} shape error(s)", report)
        try:
            profile = extract_profile(graph)
        except ExtractError as exc:
            raise DocumentInvalidError(str(exc), report)
        canonical = serialize_graph(graph)
        provider_id = provider_id_for(canonical)
        with self._lock:
            if provider_id in self._providers:
                return provider_id, report, False
            registered_at = self.clock().date()
            pdir = self._dir(provider_id)
            pdir.mkdir(parents=True, exist_ok=True)
            (pdir / "document.stad").write_text(canonical, encoding="utf-8")
            (pdir / "meta.json").write_text(
                json.dumps({"id": provider_id,
                            "registered_at": registered_at.isoformat()},
                           sort_keys=True) + "\n",
                encoding="utf-8")
            (pdir / "events.jsonl").touch()
            self._providers[provider_id] = ProviderRecord(
                provider_id=provider_id,
                document=canonical,
                graph=graph,
                profile=profile,
                registered_at=registered_at,
            )
        return provider_id, report, True

    def _record(self, provider_id: str) -> ProviderRecord:
        record = self._providers.get(provider_id)
        if record is None:
            raise UnknownProviderError(f"unknown provider: {provider_id}")
        return record

    def provider_ids(self) -> list[str]:
        with self._lock:
            return sorted(self._providers)

    def get_provider(self, provider_id: str) -> ProviderRecord:
        """Fetch for display: counts one profile click."""
        with self._lock:
            record = self._record(provider_id)
            self._append_event(provider_id, {"event": "click"})
            record.profile_clicks += 1
            return record

    def peek(self, provider_id: str) -> ProviderRecord:
        """Internal fetch (scoring, analytics): no click is counted."""
        with self._lock:
            return self._record(provider_id)

    # -- marketplace activity ---------------------------------------------

    def record_transaction(self, provider_id: str, customer_id: str,
                           date: str, confidential: bool = False,
                           ) -> TransactionRecord:
        parsed = _parse_date(date, "transaction date")
        if not isinstance(customer_id, str) or not customer_id.strip():
            raise InvalidInputError("customer_id must be a non-empty string")
        with self._lock:
            record = self._record(provider_id)
            tx_id = f"tx-{provider_id}-{len(record.transactions) + 1:04d}"
            self._append_event(provider_id, {
                "event": "transaction",
                "tx_id": tx_id,
                "customer_id": customer_id,
                "date": parsed.isoformat(),
                "confidential": bool(confidential),
            })
            tx = TransactionRecord(tx_id, provider_id, customer_id, parsed,
                                   bool(confidential))
            record.transactions[tx_id] = tx
            self._tx_index[tx_id] = provider_id
            return tx

    def _tx(self, tx_id: str) -> tuple[ProviderRecord, TransactionRecord]:
        provider_id = self._tx_index.get(tx_id)
        if provider_id is None:
            raise UnknownTransactionError(f"unknown transaction: {tx_id}")
        record = self._providers[provider_id]
        return record, record.transactions[tx_id]

    def verify_transaction(self, tx_id: str) -> TransactionRecord:
        """Marks the contract as third-party verified; idempotent."""
        with self._lock:
            record, tx = self._tx(tx_id)
            if not tx.verified:
                self._append_event(record.provider_id,
                                   {"event": "verify", "tx_id": tx_id})
                tx.verified = True
            return tx

    def record_rating(self, tx_id: str, value: int, rater_id: str,
                      rater_verified: bool = False) -> RatingRecord:
        if isinstance(value, bool) or not isinstance(value, int):
            raise InvalidInputError("rating value must be an integer")
        if not 1 <= value <= 5:
            raise InvalidInputError("rating value must be between 1 and 5")
        if not isinstance(rater_id, str) or not rater_id.strip():
            raise InvalidInputError("rater_id must be a non-empty string")
        with self._lock:
            record, tx = self._tx(tx_id)
            if rater_id in tx.ratings:
                raise DuplicateRatingError(
                    f"rater {rater_id!r} already rated {tx_id}")
            self._append_event(record.provider_id, {
                "event": "rating",
                "tx_id": tx_id,
                "value": value,
                "rater_id": rater_id,
                "rater_verified": bool(rater_verified),
            })
            rating = RatingRecord(tx_id, value, rater_id, bool(rater_verified))
            tx.ratings[rater_id] = rating
            return rating

    def verify_vat(self, provider_id: str) -> VatCheckResult:
        with self._lock:
            record = self._record(provider_id)
            legal = record.profile.legal
            vat = legal.vat if legal else None
            if not vat or not vat.strip():
                raise MissingVatError(
                    "provider document carries no VAT number")
            vat = vat.strip()
            format_valid = bool(self.verifier.check(vat))
            checked_at = self.clock().isoformat()
            self._append_event(provider_id, {
                "event": "vat-check",
                "vat": vat,
                "format_valid": format_valid,
                "checked_at": checked_at,
            })
            if format_valid:
                record.identity_verified = True
            return VatCheckResult(vat, format_valid, checked_at)

    # -- derived views ------------------------------------------------------

    def analytics(self, provider_id: str) -> AnalyticsEvidence:
        with self._lock:
            record = self._record(provider_id)
            verified_txs = [t for t in record.transactions.values() if t.verified]
            verified_ratings = sum(
                1 for t in verified_txs
                for r in t.ratings.values() if r.rater_verified)
            return AnalyticsEvidence(
                registered_at=record.registered_at,
                profile_clicks=record.profile_clicks,
                verified_transactions=len(verified_txs),
                verified_ratings=verified_ratings,
                identity_verified=record.identity_verified,
            )

    def _transaction_refs(self, record: ProviderRecord) -> list[TransactionRef]:
        return [TransactionRef(t.tx_id, t.date, t.confidential)
                for t in record.transactions.values()]

    def score(self, provider_id: str,
              weights: WeightProfile | None = None) -> TrustScoreReport:
        record = self.peek(provider_id)
        return engine.aggregate_trust(
            record.profile,
            weights=weights,
            analytics=self.analytics(provider_id),
            transactions=self._transaction_refs(record),
            as_of=self.clock().date(),
        )

    def rank(self, weights: WeightProfile | None = None,
             ) -> list[tuple[str, TrustScoreReport]]:
        """(catalog id, report) pairs, best first; ties by catalog id."""
        pairs = [(pid, self.score(pid, weights))
                 for pid in self.provider_ids()]
        # rounded comparison, same as engine.rank: weight-profile float
        # noise must not flip the catalog-id tie break
        pairs.sort(key=lambda item: (-round(item[1].aggregate, 9), item[0]))
        return pairs

    def references(self, provider_id: str) -> list[dict]:
        record = self.peek(provider_id)
        published = engine.publishable_references(
            record.profile, self._transaction_refs(record))
        out = []
        for ref in published:
            tx = None
            if ref.transaction is not None:
                tx = {
                    "id": ref.transaction.id,
                    "date": (ref.transaction.date.isoformat()
                             if ref.transaction.date else None),
                }
            out.append({
                "customer_name": ref.customer_name,
                "customer_logo": ref.customer_logo.value if ref.customer_logo else None,
                "product_image": ref.product_image.value if ref.product_image else None,
                "product_description": ref.product_description,
                "transaction": tx,
            })
        return out
