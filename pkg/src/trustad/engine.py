"""Trust scoring: per-category rubrics, weighting and aggregation.

Category weights come from the expert MoSCoW ratings via
``weight = (4 - rating) / 3``, mapping "must have" (1) to 1.0 and "not
recommended" (4) to 0.0.  Category scores live on [0, 1] and are produced by
fixed rubrics over the extracted profile:

    CustomerReference  per reference: name 0.3 + logo 0.2 + product image 0.2
                       + product description 0.3; category = top five / 5,
                       computed over the NDA-filtered reference list
    Certification      per certification: standard 0.6 + issuer 0.2 +
                       document 0.2; top three / 3
    Facility           per facility: address 0.4 + image 0.2 + two or more
                       KPIs 0.2 + organization link 0.2; best facility counts
    ProviderSystems    per system: name 0.3 + manufacturer 0.3 + image 0.2 +
                       description 0.2; top three / 3
    Employee           per person: name 0.2 + job title 0.2 + direct contact
                       (email or phone) 0.3 + picture 0.15 + expertise 0.15;
                       top three / 3
    Partner            per partner: name 0.5 + description 0.3 + logo 0.2
                       (social media links score nothing); top three / 3
    LegalData          vat 0.35 + crn 0.25 + (lei or duns) 0.20 + legal form
                       0.20
    Terms              any terms record 0.6 + any policy record 0.4 (a record
                       is a policy iff its kind is "policy")
    Publication        min(count, 3) / 3 over professional-source items that
                       are not newsfeeds; internal or newsfeed items score 0
    MarketplaceAnalytics  min(tenure years, 3)/3 * 0.3 + identity verified
                       * 0.4 + min(verified transactions, 10)/10 * 0.3

The aggregate is sum(weight * score) / sum(weight) over all ten categories;
absent evidence keeps its weight in the denominator, so missing categories
genuinely pull the total down.  Every rubric is monotone: adding one
evidence item never lowers a category score.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from datetime import date
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .profile import CustomerReference, ProviderProfile, TransactionRef
from .vocab import DEFAULT_CATEGORY_RATINGS, TrustCategory


def moscow_to_weight(rating: float) -> float:
    """Linear MoSCoW-to-weight map, 1 -> 1.0 and 4 -> 0.0."""
    if not 1.0 <= rating <= 4.0:
        raise ValueError(f"MoSCoW rating must be in [1, 4], got {rating}")
    return (4.0 - rating) / 3.0


@dataclass
class WeightProfile:
    """Named per-category weights.

    Weights are nonnegative with at least one positive.  MoSCoW-derived
    weights land in [0, 1]; uniformly scaled profiles (which leave the
    aggregate unchanged) may exceed 1 and are accepted.
    """

    name: str
    weights: dict[TrustCategory, float]

    def __post_init__(self) -> None:
        missing = [c.value for c in TrustCategory if c not in self.weights]
        extra = [k for k in self.weights if not isinstance(k, TrustCategory)]
        if missing or extra:
            raise ValueError(
                f"weight profile must cover exactly the ten categories "
                f"(missing: {missing}, unexpected: {extra})")
        for cat, w in self.weights.items():
            if w < 0.0 or w != w:  # rejects negatives and NaN
                raise ValueError(f"weight for {cat.value} must be >= 0, got {w}")
        if not any(w > 0.0 for w in self.weights.values()):
            raise ValueError("at least one weight must be positive")


def default_weight_profile() -> WeightProfile:
    return WeightProfile(
        name="default",
        weights={c: moscow_to_weight(r)
                 for c, r in DEFAULT_CATEGORY_RATINGS.items()},
    )


def weight_profile_from_dict(data: Mapping[str, object]) -> WeightProfile:
    """Strict loader for the exchange JSON {"name": ..., "weights": {...}}."""
    if set(data) != {"name", "weights"}:
        raise ValueError("weight profile JSON must have exactly "
                         "the keys 'name' and 'weights'")
    name = data["name"]
    raw = data["weights"]
    if not isinstance(name, str) or not name:
        raise ValueError("weight profile name must be a non-empty string")
    if not isinstance(raw, Mapping):
        raise ValueError("'weights' must be an object")
    allowed = {c.value: c for c in TrustCategory}
    missing = sorted(set(allowed) - set(raw))
    extra = sorted(set(raw) - set(allowed))
    if missing or extra:
        raise ValueError(f"weights must name exactly the ten categories "
                         f"(missing: {missing}, unexpected: {extra})")
    weights: dict[TrustCategory, float] = {}
    for key, value in raw.items():
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ValueError(f"weight for {key} must be a number")
        weights[allowed[key]] = float(value)
    return WeightProfile(name=name, weights=weights)


def load_weight_profile(path: str | Path) -> WeightProfile:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError("weight profile JSON must be an object")
    return weight_profile_from_dict(data)


def weight_profile_to_dict(profile: WeightProfile) -> dict[str, object]:
    return {
        "name": profile.name,
        "weights": {c.value: profile.weights[c] for c in TrustCategory},
    }


@dataclass
class AnalyticsEvidence:
    """Marketplace-observed evidence about one provider."""

    registered_at: date
    profile_clicks: int = 0
    verified_transactions: int = 0
    verified_ratings: int = 0
    identity_verified: bool = False


@dataclass
class CategoryScore:
    category: TrustCategory
    score: float
    evidence_count: int
    notes: list[str] = field(default_factory=list)


@dataclass
class BreakdownEntry:
    category_score: CategoryScore
    weight: float
    contribution: float


@dataclass
class TrustScoreReport:
    provider_id: str
    aggregate: float
    breakdown: list[BreakdownEntry]
    profile_name: str = "default"


@dataclass
class DeltaReport:
    provider_a: str
    provider_b: str
    profile_name: str
    aggregate_delta: float
    category_deltas: dict[TrustCategory, float]


def _present(value: object) -> bool:
    if value is None:
        return False
    if isinstance(value, str):
        return bool(value.strip())
    return True


def _top_k_mean(scores: Sequence[float], k: int) -> float:
    if not scores:
        return 0.0
    return sum(sorted(scores, reverse=True)[:k]) / k


def _norm(text: str | None) -> str:
    return (text or "").strip().lower()


def _reference_item(ref: CustomerReference) -> float:
    score = 0.0
    if _present(ref.customer_name):
        score += 0.3
    if _present(ref.customer_logo):
        score += 0.2
    if _present(ref.product_image):
        score += 0.2
    if _present(ref.product_description):
        score += 0.3
    return score


def _whole_years(start: date, end: date) -> int:
    if end <= start:
        return 0
    years = end.year - start.year
    if (end.month, end.day) < (start.month, start.day):
        years -= 1
    return max(0, years)


def publishable_references(profile: ProviderProfile,
                           transactions: Iterable[TransactionRef] = (),
                           ) -> list[CustomerReference]:
    """References safe to publish.

    A reference is withheld when its linked transaction is confidential,
    either per the document itself or per the catalog transaction records
    passed in (matched by transaction id).  References without a transaction
    link always pass.  Idempotent: filtering a filtered list is a no-op.
    """
    catalog_confidential = {t.id for t in transactions if t.confidential}
    published: list[CustomerReference] = []
    for ref in profile.references:
        tx = ref.transaction
        if tx is not None and (tx.confidential or tx.id in catalog_confidential):
            continue
        published.append(ref)
    return published


def score_category(profile: ProviderProfile,
                   category: TrustCategory,
                   analytics: AnalyticsEvidence | None = None,
                   published_refs: Sequence[CustomerReference] | None = None,
                   as_of: date | None = None) -> CategoryScore:
    """Score one category on [0, 1].

    ``published_refs`` is the NDA-filtered evidence base for
    CustomerReference (defaults to filtering the profile's own references).
    ``as_of`` anchors marketplace tenure so scoring stays pure; it defaults
    to today.
    """
    notes: list[str] = []

    if category is TrustCategory.CUSTOMER_REFERENCE:
        refs = (list(published_refs) if published_refs is not None
                else publishable_references(profile))
        items = [_reference_item(r) for r in refs]
        return CategoryScore(category, _top_k_mean(items, 5), len(refs), notes)

    if category is TrustCategory.CERTIFICATION:
        items = []
        for cert in profile.certifications:
            score = 0.0
            if _present(cert.standard):
                score += 0.6
            if _present(cert.issuer):
                score += 0.2
            if _present(cert.document):
                score += 0.2
            items.append(score)
        return CategoryScore(category, _top_k_mean(items, 3), len(items), notes)

    if category is TrustCategory.FACILITY:
        best = 0.0
        for fac in profile.facilities:
            score = 0.0
            if _present(fac.address):
                score += 0.4
            if _present(fac.image):
                score += 0.2
            if len(fac.kpis) >= 2:
                score += 0.2
            if _present(fac.organization):
                score += 0.2
            best = max(best, score)
        return CategoryScore(category, best, len(profile.facilities), notes)

    if category is TrustCategory.PROVIDER_SYSTEMS:
        items = []
        for sys in profile.systems:
            score = 0.0
            if _present(sys.name):
                score += 0.3
            if _present(sys.manufacturer):
                score += 0.3
            if _present(sys.image):
                score += 0.2
            if _present(sys.description):
                score += 0.2
            items.append(score)
        return CategoryScore(category, _top_k_mean(items, 3), len(items), notes)

    if category is TrustCategory.EMPLOYEE:
        items = []
        for person in profile.employees:
            score = 0.0
            if _present(person.name):
                score += 0.2
            if _present(person.job_title):
                score += 0.2
            if _present(person.email) or _present(person.telephone):
                score += 0.3
            if _present(person.image):
                score += 0.15
            if _present(person.expertise):
                score += 0.15
            items.append(score)
        return CategoryScore(category, _top_k_mean(items, 3), len(items), notes)

    if category is TrustCategory.PARTNER:
        items = []
        for partner in profile.partners:
            score = 0.0
            if _present(partner.name):
                score += 0.5
            if _present(partner.description):
                score += 0.3
            if _present(partner.logo):
                score += 0.2
            items.append(score)
        return CategoryScore(category, _top_k_mean(items, 3), len(items), notes)

    if category is TrustCategory.LEGAL_DATA:
        legal = profile.legal
        if legal is None:
            return CategoryScore(category, 0.0, 0, notes)
        score = 0.0
        count = 0
        for value in (legal.vat, legal.crn, legal.lei, legal.duns,
                      legal.legal_form):
            if _present(value):
                count += 1
        if _present(legal.vat):
            score += 0.35
        if _present(legal.crn):
            score += 0.25
        if _present(legal.lei) or _present(legal.duns):
            score += 0.20
        if _present(legal.legal_form):
            score += 0.20
        return CategoryScore(category, score, count, notes)

    if category is TrustCategory.TERMS:
        has_terms = any(_norm(t.kind) != "policy" for t in profile.terms)
        has_policy = any(_norm(t.kind) == "policy" for t in profile.terms)
        score = (0.6 if has_terms else 0.0) + (0.4 if has_policy else 0.0)
        return CategoryScore(category, score, len(profile.terms), notes)

    if category is TrustCategory.PUBLICATION:
        countable = sum(
            1 for p in profile.publications
            if _norm(p.source) == "professional" and _norm(p.kind) != "newsfeed")
        skipped = len(profile.publications) - countable
        if skipped:
            notes.append(f"{skipped} internal or newsfeed item(s) not counted")
        return CategoryScore(category, min(countable, 3) / 3,
                             len(profile.publications), notes)

    if category is TrustCategory.MARKETPLACE_ANALYTICS:
        if analytics is None:
            return CategoryScore(category, 0.0, 0, notes)
        anchor = as_of or date.today()
        years = _whole_years(analytics.registered_at, anchor)
        tenure = min(years, 3) / 3
        tx = min(analytics.verified_transactions, 10) / 10
        score = tenure * 0.3 + (0.4 if analytics.identity_verified else 0.0) + tx * 0.3
        evidence = sum((
            1 if years > 0 else 0,
            1 if analytics.identity_verified else 0,
            1 if analytics.verified_transactions > 0 else 0,
        ))
        return CategoryScore(category, score, evidence, notes)

    raise ValueError(f"unknown category: {category!r}")


def aggregate_trust(profile: ProviderProfile,
                    weights: WeightProfile | None = None,
                    analytics: AnalyticsEvidence | None = None,
                    transactions: Iterable[TransactionRef] = (),
                    as_of: date | None = None) -> TrustScoreReport:
    """Weighted aggregate over all ten categories.

    Weights of evidence-free categories stay in the denominator, so the
    aggregate only reaches 1.0 when every category is fully evidenced.
    """
    wp = weights or default_weight_profile()
    published = publishable_references(profile, transactions)
    breakdown: list[BreakdownEntry] = []
    weight_sum = sum(wp.weights[c] for c in TrustCategory)
    weighted = 0.0
    for category in TrustCategory:
        cat_score = score_category(profile, category, analytics=analytics,
                                   published_refs=published, as_of=as_of)
        w = wp.weights[category]
        weighted += w * cat_score.score
        breakdown.append(BreakdownEntry(
            category_score=cat_score,
            weight=w,
            contribution=0.0,  # filled below once weight_sum is known
        ))
    for entry in breakdown:
        entry.contribution = (entry.weight * entry.category_score.score
                              / weight_sum)
    return TrustScoreReport(
        provider_id=profile.provider_id.value,
        aggregate=weighted / weight_sum,
        breakdown=breakdown,
        profile_name=wp.name,
    )


def report_to_dict(report: TrustScoreReport) -> dict[str, object]:
    """Exchange JSON; scores are reported to four decimal places."""
    return {
        "provider_id": report.provider_id,
        "aggregate": round(report.aggregate, 4),
        "breakdown": [
            {
                "category": e.category_score.category.value,
                "score": round(e.category_score.score, 4),
                "weight": round(e.weight, 4),
                "contribution": round(e.contribution, 4),
                "evidence_count": e.category_score.evidence_count,
            }
            for e in report.breakdown
        ],
    }


def rank(reports: Iterable[TrustScoreReport]) -> list[str]:
    """Provider ids by descending aggregate, ties by ascending id.

    Aggregates are compared after rounding to nine decimals: float noise
    from a rescaled weight profile sits far below that, so scaling every
    weight by a constant can never reorder providers.
    """
    ordered = sorted(reports,
                     key=lambda r: (-round(r.aggregate, 9), r.provider_id))
    return [r.provider_id for r in ordered]


def compare(a: TrustScoreReport, b: TrustScoreReport) -> DeltaReport:
    """Per-category deltas (a minus b); profiles must match by name."""
    if a.profile_name != b.profile_name:
        raise ValueError(
            f"cannot compare reports scored under different weight profiles "
            f"({a.profile_name!r} vs {b.profile_name!r})")
    scores_a = {e.category_score.category: e.category_score.score
                for e in a.breakdown}
    scores_b = {e.category_score.category: e.category_score.score
                for e in b.breakdown}
    return DeltaReport(
        provider_a=a.provider_id,
        provider_b=b.provider_id,
        profile_name=a.profile_name,
        aggregate_delta=a.aggregate - b.aggregate,
        category_deltas={c: scores_a[c] - scores_b[c] for c in TrustCategory},
    )


def delta_report_to_dict(delta: DeltaReport) -> dict[str, object]:
    return {
        "provider_a": delta.provider_a,
        "provider_b": delta.provider_b,
        "profile": delta.profile_name,
        "aggregate_delta": round(delta.aggregate_delta, 4),
        "category_deltas": {c.value: round(delta.category_deltas[c], 4)
                            for c in TrustCategory},
    }
