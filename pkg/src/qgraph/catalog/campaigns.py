"""Search and classification campaigns."""

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from rich.console import Console
from rich.progress import BarColumn, Progress, SpinnerColumn, TextColumn

from qgraph.core.graph import Graph
from qgraph.core.graphstate import kl_verify
from qgraph.core.invariants import CodeInvariants, code_invariants
from qgraph.core.isomorphism import all_lc_representatives
from qgraph.exceptions import ValidationError, VerificationError
from qgraph.search.cliques import SearchMode, find_cliques
from qgraph.search.coding import CodingClique
from qgraph.search.groups import find_coding_groups, search_coding_groups
from qgraph.search.sets import purity_set, uncoverable_set
from qgraph.search.supergraph import build_super_graph
from qgraph.stabilizer.equivalence import find_equivalence_witness
from qgraph.utils import bits_to_labels, format_weights, fraction_to_json

logger = logging.getLogger(__name__)

console = Console(stderr=True)

MAX_CLASSIFY_QUBITS = 8


@dataclass
class SearchReport:
    """Codes found by :func:`run_search` with the stage log that produced them."""

    graph: Graph
    d: int
    mode: str
    codes: List[CodingClique]
    complete: bool = True
    log: List[Dict[str, Any]] = field(default_factory=list)

    def to_json(self) -> Dict[str, Any]:
        return {
            "graph6": self.graph.to_graph6(),
            "d": self.d,
            "mode": self.mode,
            "complete": self.complete,
            "codes": [code.to_json() for code in self.codes],
            "log": self.log,
        }


def run_search(
    g: Graph,
    d: int,
    mode: Optional[SearchMode] = None,
    group_k: Optional[int] = None,
    time_budget: Optional[float] = None,
    workers: int = 1,
) -> SearchReport:
    """Purity set, uncoverable set, super graph, clique or group search, verification.

    With ``group_k`` the coding groups of size 2^group_k are searched instead of cliques.

    Raises:
        VerificationError: If a found code fails the Knill-Laflamme check
    """
    log: List[Dict[str, Any]] = []

    def stage(name: str, started: float, **values: Any) -> None:
        entry = {"stage": name, "seconds": round(time.perf_counter() - started, 6), **values}
        log.append(entry)
        logger.info("%s: %s", name, {k: v for k, v in entry.items() if k != "stage"})

    log.append({"stage": "input", "n": g.n, "graph6": g.to_graph6(), "d": d,
                "mode": f"groups:{group_k}" if group_k is not None else str(mode or SearchMode()),
                "time_budget": time_budget, "workers": workers})

    started = time.perf_counter()
    purity = purity_set(g, d)
    stage("purity_set", started, size=len(purity))

    started = time.perf_counter()
    uncoverable = uncoverable_set(g, d)
    stage("uncoverable_set", started, size=len(uncoverable))

    started = time.perf_counter()
    sg = build_super_graph(g, d, purity, uncoverable)
    stage("super_graph", started, order=sg.order, edges=sg.edge_count)

    started = time.perf_counter()
    complete = True
    if group_k is not None:
        result = search_coding_groups(g, d, group_k, sg, time_budget=time_budget)
        codes, complete, label = result.cliques, result.complete, f"groups:{group_k}"
        stage("group_search", started, found=len(codes), complete=complete)
    else:
        mode = mode or SearchMode()
        result = find_cliques(sg, mode, time_budget=time_budget, workers=workers)
        codes, complete, label = result.cliques, result.complete, str(mode)
        stage("clique_search", started, **{k: v for k, v in result.stats.items() if k != "elapsed"})

    started = time.perf_counter()
    for code in codes:
        verdict = kl_verify(g, code.members, d)
        if not verdict.accepted:
            raise VerificationError(f"Found code {code} fails Knill-Laflamme at d={d}", verdict.to_json())
    stage("verification", started, verified=len(codes))

    return SearchReport(g, d, label, codes, complete, log)


def is_trivial_extension(group: CodingClique) -> bool:
    """True when some connected component meets no member: the code is a smaller code
    tensored with the graph state of that component."""
    support = 0
    for c in group.members:
        support |= c
    return any(not component & support for component in group.graph.components())


@dataclass
class CodeClass:
    """Codes sharing one fingerprint."""

    invariants: CodeInvariants
    representative: CodingClique
    members: List[CodingClique] = field(default_factory=list)
    witnesses: Dict[str, int] = field(default_factory=dict)

    @property
    def multiplicity(self) -> int:
        return len(self.members)

    @property
    def trivial(self) -> bool:
        return any(is_trivial_extension(member) for member in self.members)

    def to_json(self) -> Dict[str, Any]:
        rep = self.representative
        data = {
            "weights": [fraction_to_json(a) for a in self.invariants.weights],
            "weights_text": format_weights(self.invariants.weights),
            "multiplicity": self.multiplicity,
            "graph6": rep.graph.to_graph6(),
            "connected": rep.graph.is_connected(),
            "trivial": self.trivial,
            "generators": [bits_to_labels(c) for c in rep.generators],
            "frequency": self.invariants.to_json()["frequency"],
        }
        if self.witnesses:
            data["witnesses"] = dict(sorted(self.witnesses.items()))
        return data


@dataclass
class ClassificationReport:
    n: int
    k: int
    d: int
    graphs: int
    classes: List[CodeClass]

    @property
    def weight_distributions(self) -> List[Tuple[Any, ...]]:
        return sorted({c.invariants.weights for c in self.classes})

    def to_json(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "k": self.k,
            "d": self.d,
            "graphs": self.graphs,
            "weight_distributions": len(self.weight_distributions),
            "classes": [c.to_json() for c in self.classes],
        }


def _groups_on(args: Tuple[Graph, int, int]) -> List[Tuple[CodingClique, CodeInvariants]]:
    g, d, k = args
    return [(group, code_invariants(g, group.members)) for group in find_coding_groups(g, d, k)]


class Classifier:
    """Buckets every coding group on every LC class of n-vertex graphs by fingerprint."""

    def __init__(self, workers: int = 1, show_progress: bool = True):
        self.workers = max(1, workers)
        self.show_progress = show_progress

    def representatives(self, n: int, include_trivial: bool) -> List[Graph]:
        reps = list(all_lc_representatives(n))
        if not include_trivial:
            reps = [g for g in reps if not g.isolated_vertices()]
        return reps

    def _search(self, tasks: List[Tuple[Graph, int, int]]) -> List[List[Tuple[CodingClique, CodeInvariants]]]:
        if self.workers == 1:
            results = []
            with Progress(
                SpinnerColumn(),
                TextColumn("[progress.description]{task.description}"),
                BarColumn(),
                TextColumn("{task.completed}/{task.total}"),
                console=console,
                disable=not self.show_progress,
            ) as progress:
                task = progress.add_task("Searching coding groups...", total=len(tasks))
                for item in tasks:
                    results.append(_groups_on(item))
                    progress.advance(task)
            return results
        with ProcessPoolExecutor(max_workers=self.workers) as pool:
            return list(pool.map(_groups_on, tasks))

    def classify(
        self,
        n: int,
        k: int,
        d: int,
        include_trivial: bool = False,
        witness: bool = False,
    ) -> ClassificationReport:
        if not 1 <= n <= MAX_CLASSIFY_QUBITS:
            raise ValidationError(f"Classification runs for n <= {MAX_CLASSIFY_QUBITS}, got {n}", "size", n)
        reps = self.representatives(n, include_trivial)
        if self.show_progress:
            console.print(f"🔍 {len(reps)} LC classes on {n} vertices, searching [[{n},{k},{d}]] groups", style="dim")
        outcomes = self._search([(g, d, k) for g in reps])

        buckets: Dict[Tuple[Any, ...], CodeClass] = {}
        for found in outcomes:
            for group, invariants in found:
                key = invariants.fingerprint()
                if key not in buckets:
                    buckets[key] = CodeClass(invariants, group)
                buckets[key].members.append(group)
        classes = [buckets[key] for key in sorted(buckets)]
        skipped = 0
        if not include_trivial:
            skipped = sum(1 for c in classes if c.trivial)
            classes = [c for c in classes if not c.trivial]

        if witness:
            for code_class in classes:
                for other in code_class.members[1:]:
                    status = find_equivalence_witness(code_class.representative, other).status
                    code_class.witnesses[status] = code_class.witnesses.get(status, 0) + 1

        logger.info("[[%d,%d,%d]]: %d class(es), %d weight distribution(s), %d trivial class(es) skipped",
                    n, k, d, len(classes), len({c.invariants.weights for c in classes}), skipped)
        return ClassificationReport(n, k, d, len(reps), classes)


def classify(
    n: int,
    k: int,
    d: int,
    workers: int = 1,
    include_trivial: bool = False,
    witness: bool = False,
    show_progress: bool = False,
) -> ClassificationReport:
    return Classifier(workers, show_progress).classify(n, k, d, include_trivial, witness)

