"""Deterministic synthetic corpus of trust advertisement documents.

Documents are generated from a SplitMix64 PRNG (Steele/Lea/Flood 2014): a
64-bit, fully specified generator, so the same (seed, n, prevalence) input
yields byte-identical documents on any platform or Python version.  Each
document gets its own child generator derived from (seed, index), so
documents are independent of each other and of n.

Category prevalences are drawn as independent Bernoulli signals per
document.  The customer-logos and customer-names knobs are document-level
marginals: logos and names can only appear on documents that have customer
references at all, so the generator draws them conditional on customer-info
with probability marginal / p(customer-info), capped at 1.  When such a draw
succeeds every reference in the document carries the field.

Within an included category, item counts are uniform over small ranges:
1-5 customer references, 1-3 certifications, 1-4 employees, 1-4
publications, 1-3 systems, 1-2 facilities (always present), 1-3 partners
and 1-2 terms records when their fixed 0.5 blocks fire.  Legal data is
always present with at least one registry identifier.  About 40% of
references link a transaction and 30% of those are under a confidentiality
agreement.  Every generated document validates with zero errors by
construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

from . import vocab
from .stad import (
    BlankNode,
    Iri,
    Literal,
    Triple,
    TrustGraph,
    XSD_DATE,
    XSD_DECIMAL,
    XSD_INTEGER,
    serialize_graph,
)

SIGNALS = (
    "customer-info",
    "certifications",
    "personnel",
    "publications",
    "systems",
    "customer-logos",
    "customer-names",
)

DEFAULT_PREVALENCE: dict[str, float] = {
    "customer-info": 0.76,
    "certifications": 0.90,
    "personnel": 0.85,
    "publications": 0.70,
    "systems": 0.33,
    "customer-logos": 0.50,
    "customer-names": 0.50,
}

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


class SplitMix64:
    """SplitMix64: 64-bit state, one multiply-shift-xor avalanche per draw."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GOLDEN) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def random(self) -> float:
        # 53-bit mantissa, uniform on [0, 1)
        return (self.next_u64() >> 11) * (2.0 ** -53)

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer on [lo, hi]; modulo bias is irrelevant here."""
        return lo + self.next_u64() % (hi - lo + 1)

    def choice(self, seq):
        return seq[self.randint(0, len(seq) - 1)]

    def bernoulli(self, p: float) -> bool:
        return self.random() < p


def child_rng(seed: int, index: int) -> SplitMix64:
    """Independent per-document stream: one avalanche over (seed, index)."""
    mixer = SplitMix64((seed ^ ((index + 1) * _GOLDEN)) & _MASK64)
    return SplitMix64(mixer.next_u64())


@dataclass
class CorpusParams:
    n: int
    seed: int = 0
    prevalence: dict[str, float] = field(
        default_factory=lambda: dict(DEFAULT_PREVALENCE))

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("n must be >= 0")
        if not 0 <= self.seed <= _MASK64:
            raise ValueError("seed must fit in 64 bits")
        unknown = sorted(set(self.prevalence) - set(SIGNALS))
        if unknown:
            raise ValueError(f"unknown prevalence signals: {unknown}")
        merged = dict(DEFAULT_PREVALENCE)
        merged.update(self.prevalence)
        for name, p in merged.items():
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"prevalence {name} must be in [0, 1], got {p}")
        self.prevalence = merged


_ADJECTIVES = ("Alpine", "Nordic", "Precision", "Blue", "Crown", "Delta",
               "Eastern", "Falcon", "Granite", "Harbor", "Iron", "Jupiter")
_NOUNS = ("Metal", "Tool", "Drive", "Forge", "Casting", "Gear", "Plastics",
          "Sensor", "Machine", "Surface")
_SUFFIXES = ("Works", "Systems", "Industries", "Group", "Technik", "Solutions")
_LEGAL_FORMS = ("GmbH", "AG", "KG", "SE")
_CITIES = ("Linz", "Graz", "Wien", "Salzburg", "Munchen", "Stuttgart",
           "Dresden", "Brno", "Zilina", "Ostrava")
_STREETS = ("Industriestrasse", "Werkstrasse", "Hafenring", "Bahnhofallee",
            "Feldweg", "Technikergasse")
_FIRST_NAMES = ("Anna", "Ben", "Clara", "David", "Eva", "Felix", "Greta",
                "Hans", "Ines", "Jonas", "Karin", "Lukas", "Marta", "Nils",
                "Olga", "Paul")
_LAST_NAMES = ("Huber", "Steiner", "Fuchs", "Wagner", "Berger", "Keller",
               "Maier", "Schmid", "Winkler", "Gruber")
_JOB_TITLES = ("Head of Sales", "Quality Manager", "Production Lead",
               "Key Account Manager", "Plant Manager", "Process Engineer")
_HONORIFICS = ("Dr.", "Dipl.-Ing.", "Mag.", "Ing.")
_EXPERTISE = ("quotations for machined parts", "tooling and fixture design",
              "supplier audits", "weld seam inspection",
              "surface treatment processes", "logistics planning")
_STANDARDS = ("ISO 9001", "ISO 14001", "ISO 27001", "ISO/TS 16949",
              "EN 9100", "ISO 50001")
_ISSUERS = ("TUV Austria", "TUV Sud", "DNV", "Bureau Veritas", "SGS")
_MACHINES = ("5-axis milling centre", "CNC lathe", "Wire EDM", "Laser cutter",
             "Injection moulding line", "Grinding cell", "Welding robot")
_MANUFACTURERS = ("DMG Mori", "Trumpf", "Haas", "Engel", "KUKA", "Fanuc",
                  "Mazak")
_SYSTEM_KINDS = ("machine", "software", "quality", "organizational")
_KPI_NAMES = ("production area", "employees on site", "annual output",
              "machine count")
_KPI_UNITS = ("m2", "units", "t", "pcs")
_PUB_VERBS = ("Improving", "Scaling", "Rethinking", "Automating", "Measuring")
_PUB_TOPICS = ("surface finishing", "gear machining", "quality audits",
               "die casting", "sensor calibration", "tool wear")
_PUB_KINDS = ("success-story", "company-event", "research-paper", "newsfeed")
_PRODUCTS = ("gear housing", "pump casing", "valve block", "sensor mount",
             "drive shaft", "turbine bracket")
_CUSTOMERS = ("Gearbox Systems AG", "Motorwerk GmbH", "Hydraulik Nord",
              "VoltDrive SE", "AeroParts Group", "RailTech AG",
              "Kranbau Ost", "TurbineTech SE")
_PARTNER_NAMES = ("SteelCo", "Toolix", "LogiPart", "Galvanik Sud",
                  "HeatTreat Plus", "CastAlloy")
_TERMS_KINDS = ("general", "delivery", "purchasing", "sales")


def _conditional(marginal: float, given: float) -> float:
    if given <= 0.0:
        return 0.0
    return min(1.0, marginal / given)


class _DocBuilder:
    def __init__(self, base: str):
        self.base = base
        self.triples: list[Triple] = []
        self._table = vocab.default_namespace_table()
        self._rdf_type = vocab.rdf_type(self._table)

    def node(self, local: str) -> Iri:
        return Iri(self.base + local)

    def typed(self, subject, class_name: str) -> None:
        self.triples.append(
            Triple(subject, self._rdf_type, vocab.class_iri(class_name)))

    def add(self, subject, prop: str, obj) -> None:
        self.triples.append(Triple(subject, vocab.property_iri(prop), obj))

    def graph(self) -> TrustGraph:
        entries = {label: ns for label, ns in self._table.items()}
        entries["p"] = Iri(self.base)
        return TrustGraph(frozenset(self.triples),
                          vocab.PrefixTable(entries))


def _date_literal(rng: SplitMix64) -> Literal:
    year = rng.randint(2019, 2025)
    month = rng.randint(1, 12)
    day = rng.randint(1, 28)
    return Literal(f"{year:04d}-{month:02d}-{day:02d}", datatype=XSD_DATE)


def generate_document(params: CorpusParams, index: int) -> str:
    """Canonical text of document ``index`` under ``params``."""
    rng = child_rng(params.seed, index)
    prev = params.prevalence

    name = f"{rng.choice(_ADJECTIVES)} {rng.choice(_NOUNS)} {rng.choice(_SUFFIXES)}"
    slug = name.lower().replace(" ", "-").replace("/", "-")
    host = f"www.{slug}.example.com"
    b = _DocBuilder(f"http://providers.example.com/{index:04d}-{slug}#")

    provider = b.node("provider")
    b.typed(provider, "Provider")

    site = b.node("site")
    b.typed(site, "ProviderWebsite")
    b.add(site, "url", Iri(f"https://{host}/"))
    b.add(provider, "hasWebsite", site)

    # Legal data: always present, at least one registry identifier.
    legal = b.node("legal")
    b.typed(legal, "LegalData")
    b.add(provider, "hasLegalData", legal)
    got_identifier = False
    if rng.bernoulli(0.9):
        country = rng.choice(("ATU", "DE", "CZ", "SK"))
        b.add(legal, "vat", Literal(f"{country}{rng.randint(10_000_000, 99_999_999)}"))
        got_identifier = True
    if rng.bernoulli(0.6):
        b.add(legal, "crn", Literal(f"FN {rng.randint(100000, 999999)}{rng.choice('abcdefgik')}"))
        got_identifier = True
    if rng.bernoulli(0.3):
        b.add(legal, "lei", Literal(f"{rng.randint(10**17, 10**18 - 1)}LE"))
        got_identifier = True
    if rng.bernoulli(0.3):
        b.add(legal, "duns", Literal(f"{rng.randint(100000000, 999999999)}"))
        got_identifier = True
    if not got_identifier:
        b.add(legal, "vat", Literal(f"ATU{rng.randint(10_000_000, 99_999_999)}"))
    if rng.bernoulli(0.5):
        b.add(legal, "legalForm", Literal(rng.choice(_LEGAL_FORMS)))
    if rng.bernoulli(0.3):
        b.add(legal, "license", Literal(f"Trade license {rng.randint(2015, 2024)}"))

    # Facilities: always at least one, address always present.
    organization = None
    facilities = []
    blank_counter = 0
    for fi in range(rng.randint(1, 2)):
        fac = b.node(f"facility{fi}")
        facilities.append(fac)
        b.typed(fac, "Facility")
        b.add(provider, "hasFacility", fac)
        b.add(fac, "address",
              Literal(f"{rng.choice(_STREETS)} {rng.randint(1, 120)}, "
                      f"{rng.choice(_CITIES)}"))
        if rng.bernoulli(0.5):
            b.add(fac, "hasImage", Iri(f"https://{host}/img/site{fi}.jpg"))
        if rng.bernoulli(0.3):
            if organization is None:
                organization = b.node("group")
                b.typed(organization, "Organization")
            b.add(fac, "belongsToOrganization", organization)
        for _ in range(rng.randint(0, 3)):
            kpi = BlankNode(f"kpi{blank_counter}")
            blank_counter += 1
            b.typed(kpi, "KPI")
            b.add(fac, "hasKPI", kpi)
            b.add(kpi, "kpiName", Literal(rng.choice(_KPI_NAMES)))
            b.add(kpi, "kpiValue",
                  Literal(f"{rng.randint(10, 99999)}.0", datatype=XSD_DECIMAL))
            if rng.bernoulli(0.6):
                b.add(kpi, "kpiUnit", Literal(rng.choice(_KPI_UNITS)))
            if rng.bernoulli(0.4):
                b.add(kpi, "kpiYear",
                      Literal(str(rng.randint(2018, 2024)), datatype=XSD_INTEGER))

    if rng.bernoulli(prev["systems"]):
        for si in range(rng.randint(1, 3)):
            sys_node = b.node(f"system{si}")
            b.typed(sys_node, "ProviderSystem")
            b.add(facilities[0], "hasSystem", sys_node)
            b.add(sys_node, "systemName", Literal(rng.choice(_MACHINES)))
            if rng.bernoulli(0.7):
                b.add(sys_node, "systemKind", Literal(rng.choice(_SYSTEM_KINDS)))
            if rng.bernoulli(0.7):
                b.add(sys_node, "manufacturer", Literal(rng.choice(_MANUFACTURERS)))
            if rng.bernoulli(0.4):
                b.add(sys_node, "systemImage", Iri(f"https://{host}/img/sys{si}.jpg"))
            if rng.bernoulli(0.5):
                b.add(sys_node, "systemDescription",
                      Literal(f"{rng.choice(_MACHINES)} used for "
                              f"{rng.choice(_PUB_TOPICS)}."))

    if rng.bernoulli(prev["personnel"]):
        for ei in range(rng.randint(1, 4)):
            person = b.node(f"person{ei}")
            b.typed(person, "Employee")
            b.add(provider, "hasEmployee", person)
            first, last = rng.choice(_FIRST_NAMES), rng.choice(_LAST_NAMES)
            b.add(person, "name", Literal(f"{first} {last}"))
            if rng.bernoulli(0.8):
                b.add(person, "jobTitle", Literal(rng.choice(_JOB_TITLES)))
            if rng.bernoulli(0.3):
                b.add(person, "honorificPrefix", Literal(rng.choice(_HONORIFICS)))
            if rng.bernoulli(0.6):
                b.add(person, "email",
                      Literal(f"{first.lower()}.{last.lower()}@{slug}.example.com"))
            if rng.bernoulli(0.5):
                b.add(person, "telephone",
                      Literal(f"+43 {rng.randint(600, 799)} {rng.randint(1000000, 9999999)}"))
            if rng.bernoulli(0.4):
                b.add(person, "image", Iri(f"https://{host}/img/team{ei}.jpg"))
            if rng.bernoulli(0.4):
                b.add(person, "expertise",
                      Literal(f"Knows about {rng.choice(_EXPERTISE)}."))

    if rng.bernoulli(prev["certifications"]):
        chosen: list[str] = []
        for ci in range(rng.randint(1, 3)):
            cert = b.node(f"certification{ci}")
            b.typed(cert, "Certification")
            b.add(provider, "hasCertification", cert)
            standard = rng.choice(_STANDARDS)
            while standard in chosen:
                standard = rng.choice(_STANDARDS)
            chosen.append(standard)
            b.add(cert, "standard", Literal(standard))
            if rng.bernoulli(0.6):
                b.add(cert, "issuer", Literal(rng.choice(_ISSUERS)))
            if rng.bernoulli(0.5):
                b.add(cert, "certificateDocument",
                      Iri(f"https://{host}/docs/cert{ci}.pdf"))
            if rng.bernoulli(0.3):
                b.add(cert, "certificateDescription",
                      Literal(f"Audited {rng.randint(2018, 2024)}."))

    if rng.bernoulli(prev["publications"]):
        for pi in range(rng.randint(1, 4)):
            pub = b.node(f"publication{pi}")
            b.typed(pub, "Publication")
            b.add(provider, "hasPublication", pub)
            b.add(pub, "title",
                  Literal(f"{rng.choice(_PUB_VERBS)} {rng.choice(_PUB_TOPICS)}"))
            b.add(pub, "publicationKind", Literal(rng.choice(_PUB_KINDS)))
            b.add(pub, "publicationSource",
                  Literal("professional" if rng.bernoulli(0.5) else "internal"))
            if rng.bernoulli(0.7):
                b.add(pub, "link", Iri(f"https://{host}/news/item{pi}"))

    if rng.bernoulli(prev["customer-info"]):
        show_logos = rng.bernoulli(
            _conditional(prev["customer-logos"], prev["customer-info"]))
        show_names = rng.bernoulli(
            _conditional(prev["customer-names"], prev["customer-info"]))
        for ri in range(rng.randint(1, 5)):
            ref = b.node(f"reference{ri}")
            b.typed(ref, "CustomerReference")
            b.add(provider, "hasCustomerReference", ref)
            customer = rng.choice(_CUSTOMERS)
            if show_names:
                b.add(ref, "customerName", Literal(customer))
            if show_logos:
                logo_slug = customer.lower().replace(" ", "-")
                b.add(ref, "customerLogo",
                      Iri(f"https://logos.example.com/{logo_slug}.svg"))
            if rng.bernoulli(0.4):
                b.add(ref, "productImage", Iri(f"https://{host}/img/ref{ri}.jpg"))
            if rng.bernoulli(0.6):
                b.add(ref, "productDescription",
                      Literal(f"Series production of a {rng.choice(_PRODUCTS)}."))
            if rng.bernoulli(0.4):
                tx = b.node(f"transaction{ri}")
                b.typed(tx, "Transaction")
                b.add(ref, "hasTransaction", tx)
                b.add(tx, "transactionDate", _date_literal(rng))
                if rng.bernoulli(0.3):
                    nda = BlankNode(f"nda{ri}")
                    b.typed(nda, "ConfidentialityAgreement")
                    b.add(nda, "coversTransaction", tx)

    if rng.bernoulli(0.5):
        for pi in range(rng.randint(1, 3)):
            partner = b.node(f"partner{pi}")
            b.typed(partner, "Partner")
            b.add(provider, "hasPartner", partner)
            b.add(partner, "partnerName",
                  Literal(f"{rng.choice(_PARTNER_NAMES)} {rng.choice(_CITIES)}"))
            if rng.bernoulli(0.4):
                b.add(partner, "partnerLogo",
                      Iri(f"https://logos.example.com/partner{pi}.png"))
            if rng.bernoulli(0.5):
                b.add(partner, "partnerDescription",
                      Literal(f"Partner for {rng.choice(_EXPERTISE)}."))
            if rng.bernoulli(0.3):
                b.add(partner, "socialNetwork",
                      Iri(f"https://social.example.com/partner{pi}"))

    if rng.bernoulli(0.5):
        used_policy = False
        for ti in range(rng.randint(1, 2)):
            terms = b.node(f"terms{ti}")
            b.typed(terms, "Terms")
            b.add(provider, "hasTerms", terms)
            if not used_policy and rng.bernoulli(0.4):
                used_policy = True
                b.add(terms, "termsKind", Literal("policy"))
                b.add(terms, "termsText",
                      Literal("Employees receive yearly safety training."))
            else:
                b.add(terms, "termsKind", Literal(rng.choice(_TERMS_KINDS)))
                if rng.bernoulli(0.7):
                    b.add(terms, "termsDocument", Iri(f"https://{host}/docs/terms{ti}.pdf"))
                else:
                    b.add(terms, "termsText",
                          Literal("Standard terms apply to all offers."))

    return serialize_graph(b.graph())


def document_name(index: int) -> str:
    return f"provider-{index:04d}.stad"


def generate_corpus(params: CorpusParams) -> Iterator[tuple[str, str]]:
    for index in range(params.n):
        yield document_name(index), generate_document(params, index)


def write_corpus(params: CorpusParams, out_dir: str | Path) -> list[Path]:
    """Write the corpus to ``out_dir``; returns the paths written."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, text in generate_corpus(params):
        path = out / name
        path.write_text(text, encoding="utf-8")
        paths.append(path)
    return paths


def load_prevalence_file(path: str | Path) -> dict[str, float]:
    """Read a prevalence override JSON file ({signal: probability})."""
    import json

    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError("prevalence file must be a JSON object")
    out: dict[str, float] = {}
    for key, value in data.items():
        if key not in SIGNALS:
            raise ValueError(f"unknown prevalence signal: {key!r}")
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ValueError(f"prevalence {key} must be a number")
        if not 0.0 <= value <= 1.0:
            raise ValueError(f"prevalence {key} must be in [0, 1], got {value}")
        out[key] = float(value)
    return out
