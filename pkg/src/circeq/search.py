"""Checkpointed search for circulants that are PQ-equivalent (or merely
cospectral) without being affinely equivalent."""

from __future__ import annotations

import json
import os
import tempfile
import time
from dataclasses import dataclass
from typing import Callable, Iterator

from .matgraph import circulant_from, pq_equivalent
from .residue import ResidueSet, affine_classes
from .spectra import autocorrelation_spectrum, spectra_equal, spectrum_fingerprint

CHECKPOINT_VERSION = 1
MAX_MODULUS = 64


class CheckpointError(ValueError):
    """A checkpoint that does not belong to this search or this format version."""


@dataclass(frozen=True)
class Finding:
    index: int
    S: ResidueSet
    T: ResidueSet
    status: str  # "pq", "spectral_only" or "inconclusive"
    pq_witness: dict | None = None

    @property
    def spectral_only(self) -> bool:
        return self.status == "spectral_only"

    def to_json_obj(self) -> dict:
        return {
            "index": self.index,
            "S": str(self.S),
            "T": str(self.T),
            "status": self.status,
            "spectral_only": self.spectral_only,
            "pq_witness": self.pq_witness,
        }

    def to_line(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)


def _params(n: int, k: int, budget: int | None) -> dict:
    return {"search": "bipartite-adam", "n": n, "k": k, "budget": budget}


def load_checkpoint(path: str, n: int, k: int, budget: int | None) -> dict:
    with open(path, encoding="utf-8") as fh:
        state = json.load(fh)
    if state.get("version") != CHECKPOINT_VERSION:
        raise CheckpointError(f"checkpoint version {state.get('version')!r}, expected {CHECKPOINT_VERSION}")
    if state.get("params") != _params(n, k, budget):
        raise CheckpointError(f"checkpoint parameters {state.get('params')} do not match this search")
    return state


def write_checkpoint(path: str, state: dict) -> None:
    """Write via a temporary file in the same directory and an atomic rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".ckpt-", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(state, fh, sort_keys=True)
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _finding_from_json(obj: dict) -> Finding:
    from .residue import parse

    return Finding(obj["index"], parse(obj["S"]), parse(obj["T"]), obj["status"], obj["pq_witness"])


def search_bipartite_adam(
    n: int,
    k: int,
    checkpoint_path: str | None = None,
    checkpoint_every: float = 60.0,
    budget: int | None = None,
    resume: bool = False,
    stop_after: int | None = None,
    on_checkpoint: Callable[[dict], None] | None = None,
) -> Iterator[Finding]:
    """Yield findings over pairs of distinct affine classes of weight k mod n.

    Classes are visited in the fixed order of ``affine_classes``; class i is
    compared with every earlier class sharing its spectrum fingerprint.  A
    checkpoint records the next class to visit and the findings so far.
    With ``resume`` the stored findings are yielded again before the search
    continues, so the stream is the same as for an uninterrupted run.
    ``stop_after`` visits at most that many classes in this call.
    """
    if not 1 <= n <= MAX_MODULUS:
        raise ValueError(f"n must lie in 1..{MAX_MODULUS}")
    if not 0 <= k <= n:
        raise ValueError("k must lie in 0..n")
    params = _params(n, k, budget)
    cursor = 0
    findings: list[Finding] = []
    if resume:
        if checkpoint_path is None:
            raise ValueError("resume needs a checkpoint path")
        state = load_checkpoint(checkpoint_path, n, k, budget)
        cursor = state["cursor"]
        findings = [_finding_from_json(f) for f in state["findings"]]
        yield from findings

    reps = affine_classes(n, k)
    spectra = [autocorrelation_spectrum(S) for S in reps]
    prints = [spectrum_fingerprint(sp) for sp in spectra]
    earlier: dict[str, list[int]] = {}
    for j in range(min(cursor, len(reps))):
        earlier.setdefault(prints[j], []).append(j)

    def snapshot(done: bool) -> None:
        state = {
            "version": CHECKPOINT_VERSION,
            "params": params,
            "cursor": cursor,
            "classes": len(reps),
            "complete": done,
            "findings": [f.to_json_obj() for f in findings],
        }
        if checkpoint_path is not None:
            write_checkpoint(checkpoint_path, state)
        if on_checkpoint is not None:
            on_checkpoint(state)

    last = time.monotonic()
    visited = 0
    while cursor < len(reps):
        if stop_after is not None and visited >= stop_after:
            break
        i = cursor
        for j in earlier.get(prints[i], []):
            if not spectra_equal(spectra[j], spectra[i]):
                continue
            verdict = pq_equivalent(circulant_from(reps[j]), circulant_from(reps[i]), budget)
            if verdict.inconclusive:
                f = Finding(len(findings), reps[j], reps[i], "inconclusive")
            elif verdict.equivalent:
                P, Q = verdict.witness
                f = Finding(len(findings), reps[j], reps[i], "pq", {"P": P.to_json_obj(), "Q": Q.to_json_obj()})
            else:
                f = Finding(len(findings), reps[j], reps[i], "spectral_only")
            findings.append(f)
            yield f
        earlier.setdefault(prints[i], []).append(i)
        cursor += 1
        visited += 1
        now = time.monotonic()
        if now - last >= checkpoint_every and cursor < len(reps):
            snapshot(False)
            last = now
    snapshot(cursor >= len(reps))
