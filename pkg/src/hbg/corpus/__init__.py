"""The bundled presentations, reduction script and golden values.

The data files live next to this module.  :func:`verify_corpus` re-checks all
of them and reports each item separately, so one broken file does not hide
the state of the others.
"""

from __future__ import annotations

import configparser
import csv
from dataclasses import dataclass, field
from pathlib import Path

from ..abelian import invariants
from ..errors import HbgError
from ..homcount import builtin_group, count_homomorphisms
from ..presentation import Presentation, load_presentation
from ..tietze import load_script, replay_script

CORPUS_DIR = Path(__file__).parent
PRESENTATIONS = ("wajnryb_genus2.pres", "simple_genus2.pres", "genus1.pres")
SCRIPT = "genus2_reduction.tietze"
MANIFEST = "manifest.txt"
GOLDENS = "goldens.txt"


def path(name: str) -> Path:
    return CORPUS_DIR / name


def load(name: str) -> Presentation:
    return load_presentation(path(name))


@dataclass(frozen=True)
class ManifestEntry:
    generators: int
    tags: dict[str, tuple[str, ...]]

    @property
    def labels(self) -> list[str]:
        return [label for labels in self.tags.values() for label in labels]


def read_manifest(file: str | Path) -> dict[str, ManifestEntry]:
    parser = configparser.ConfigParser(delimiters=("=",), interpolation=None)
    parser.optionxform = str
    with open(file, encoding="utf-8") as fh:
        parser.read_file(fh)
    out = {}
    for section in parser.sections():
        items = parser[section]
        tags = {key[len("tag "):]: tuple(value.split())
                for key, value in items.items() if key.startswith("tag ")}
        out[section] = ManifestEntry(int(items["generators"]), tags)
    return out


def check_manifest(p: Presentation, entry: ManifestEntry) -> list[str]:
    """Differences between a presentation and its manifest entry."""
    problems = []
    if len(p.generators) != entry.generators:
        problems.append(f"{len(p.generators)} generators, manifest says {entry.generators}")
    expected = entry.labels
    actual = [r.label for r in p.relations]
    missing = [x for x in expected if x not in actual]
    extra = [x for x in actual if x not in expected]
    if missing:
        problems.append("missing relations: " + " ".join(missing))
    if extra:
        problems.append("relations not in manifest: " + " ".join(str(x) for x in extra))
    return problems


@dataclass(frozen=True)
class GoldenRecord:
    artifact: str
    quantity: str
    value: str
    provenance: str
    pinned: str


def read_goldens(file: str | Path) -> list[GoldenRecord]:
    with open(file, encoding="utf-8") as fh:
        rows = [line for line in fh if line.strip() and not line.lstrip().startswith("#")]
    return [GoldenRecord(*(cell.strip() for cell in row))
            for row in csv.reader(rows, delimiter="|")]


def measure(p: Presentation, quantity: str) -> str:
    """The value of a golden quantity ("snf" or "hom:<group>") for ``p``."""
    if quantity == "snf":
        return str(invariants(p))
    if quantity.startswith("hom:"):
        return str(count_homomorphisms(p, builtin_group(quantity[4:])))
    raise HbgError(f"unknown golden quantity {quantity!r}")


@dataclass
class CorpusItem:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class CorpusReport:
    items: list[CorpusItem] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(item.ok for item in self.items)

    def failures(self) -> list[CorpusItem]:
        return [item for item in self.items if not item.ok]

    def to_json(self) -> dict:
        return {"ok": self.ok,
                "items": [{"name": i.name, "ok": i.ok, "detail": i.detail} for i in self.items]}


_ERRORS = (HbgError, OSError, ValueError, KeyError, TypeError, configparser.Error)


def verify_corpus(root: str | Path | None = None) -> CorpusReport:
    root = Path(root) if root is not None else CORPUS_DIR
    report = CorpusReport()

    def item(name: str, check) -> None:
        try:
            detail = check()
        except _ERRORS as exc:
            report.items.append(CorpusItem(name, False, f"{type(exc).__name__}: {exc}"))
            return
        if isinstance(detail, list):
            report.items.append(CorpusItem(name, not detail, "; ".join(detail)))
        else:
            report.items.append(CorpusItem(name, True, detail or ""))

    loaded: dict[str, Presentation] = {}
    manifest: dict[str, ManifestEntry] = {}

    def parse(name):
        loaded[name] = load_presentation(root / name)
        p = loaded[name]
        return f"{len(p.generators)} generators, {len(p.relations)} relations"

    for name in PRESENTATIONS:
        item(f"parse {name}", lambda name=name: parse(name))

    def read():
        manifest.update(read_manifest(root / MANIFEST))
        return f"{len(manifest)} entries"

    item(f"read {MANIFEST}", read)
    for name in PRESENTATIONS:
        if name in loaded and manifest:
            item(f"manifest {name}", lambda name=name: check_manifest(loaded[name], manifest[name]))

    def replay():
        script = load_script(root / SCRIPT)
        result = replay_script(script)
        if result.error is not None:
            return [f"move {result.failed_index} failed: {result.error}"]
        if not result.equals_target:
            return ["final presentation differs from target"]
        return f"{len(result.statuses)} moves verified, final presentation equals target"

    item(f"replay {SCRIPT}", replay)

    goldens: list[GoldenRecord] = []
    item(f"read {GOLDENS}", lambda: goldens.extend(read_goldens(root / GOLDENS)) or f"{len(goldens)} records")
    for g in goldens:
        def golden(g=g):
            if not g.provenance:
                return ["no provenance note"]
            p = loaded.get(g.artifact)
            if p is None:
                p = load_presentation(root / g.artifact)
            got = measure(p, g.quantity)
            return [] if got == g.value else [f"expected {g.value}, got {got}"]
        item(f"golden {g.artifact} {g.quantity}", golden)
    return report
