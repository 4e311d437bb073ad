"""Executable heat-and-information walkthroughs over the span engine.

Encryption runs the communication cell on concrete elements and asserts the
closed form against the engine result; the closed form is the oracle, the
engine is the artifact under test.  Decoherence and the ciphertext census
are exact counts, with an optional seeded sampling mode for demonstrations.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidElement
from .groupoids import TRIVIAL_OBJECT, Groupoid
from .spans import apply_span
from .structures import (
    CommunicationStructure,
    build_delta,
    build_lambda,
    wedge_morphism,
)
from .util import seeded_rng

ST1 = (TRIVIAL_OBJECT, TRIVIAL_OBJECT)


@dataclass(frozen=True)
class EncryptionTranscript:
    group: Groupoid
    plaintext: object
    key: object
    stage_trace: tuple          # (label, rendered state) pairs
    ciphertext: object          # object of the discrete side
    heat: object                # morphism of the group side
    comm: CommunicationStructure


_COMM_CACHE = {}


def communication_for(group: Groupoid) -> CommunicationStructure:
    if group not in _COMM_CACHE:
        _COMM_CACHE[group] = build_lambda(build_delta(group))
    return _COMM_CACHE[group]


def _single(outs, where):
    if len(outs) != 1 or outs[0][1] != 1:
        raise AssertionError("expected a single unit branch %s, got %r" % (where, outs))
    return outs[0][0]


def encrypt(group: Groupoid, plaintext, key, comm=None) -> EncryptionTranscript:
    """Run the communication cell on (plaintext, key-level) and trace the stages."""
    if plaintext not in group.morphisms or key not in group.morphisms:
        raise InvalidElement("plaintext and key must be group elements")
    comm = comm or communication_for(group)
    comp = comm.complementary
    g = comp.group_side
    d = comp.discrete_side
    src = comm.source
    state = src.canonical(
        (g.identity[g.objects[0]], plaintext,
         comp.bijection[key], comp.bijection[key])
    )
    trace = [("input", (plaintext, ("delta", key)))]

    after_pre = _single(apply_span(comm.pre, ST1, state), "after the bent bijection")
    mixed_mor = wedge_morphism(g, after_pre[:2])
    trace.append(("after-transpose", (mixed_mor, ("delta", key))))

    after_swap = _single(apply_span(comm.swap, ST1, after_pre), "after the bijection pair")
    packed = _single(apply_span(comm.pack, ST1, after_swap), "after layering")
    out_mor = wedge_morphism(comm.message_groupoid, packed)
    cipher_obj, heat = out_mor
    trace.append(("output", (("delta", d.src[cipher_obj]), heat)))

    expected_cipher = comp.bijection[group.compose(key, plaintext)]
    if d.src[cipher_obj] != expected_cipher or heat != key:
        raise AssertionError(
            "engine output %r does not match the closed form (%r, %r)"
            % (out_mor, expected_cipher, key)
        )
    return EncryptionTranscript(
        group=group, plaintext=plaintext, key=key, stage_trace=tuple(trace),
        ciphertext=expected_cipher, heat=heat, comm=comm,
    )


def decrypt(group: Groupoid, ciphertext, key):
    """Invert the encryption in closed form: key-inverse times the preimage."""
    if ciphertext not in group.morphisms or key not in group.morphisms:
        raise InvalidElement("ciphertext label and key must be group elements")
    return group.compose(group.inverse(key), ciphertext)


def ciphertext_distribution(group: Groupoid, plaintext, comm=None):
    """Exact ciphertext counts under a uniform key; always flat."""
    comm = comm or communication_for(group)
    counts = {}
    for key in group.morphisms:
        t = encrypt(group, plaintext, key, comm=comm)
        counts[t.ciphertext] = counts.get(t.ciphertext, 0) + 1
    return counts


@dataclass(frozen=True)
class DecoherenceTrial:
    group: Groupoid
    encoded: object
    perturbations: tuple
    retrieved: object
    retrieval_success: bool


def decoherence_trial(group: Groupoid, info, environment_ops, seed=None):
    """Erase info into a microstate, perturb it, try to read it back.

    environment_ops is a sequence of group elements, each multiplying the
    microstate the way a controlled operation does.  Deterministic: the seed
    only matters when ops are drawn elsewhere.
    """
    if info not in group.morphisms:
        raise InvalidElement("info must be a group element")
    micro = info
    for e in environment_ops:
        if e not in group.morphisms:
            raise InvalidElement("environment op %r is not a group element" % (e,))
        micro = group.compose(e, micro)
    return DecoherenceTrial(
        group=group, encoded=info, perturbations=tuple(environment_ops),
        retrieved=micro, retrieval_success=(micro == info),
    )


def decoherence_rates(group: Groupoid):
    """Exact retrieval rates: no environment, and one uniform multiplication."""
    n = group.mor_count()
    empty_ok = sum(
        1 for m in group.morphisms
        if decoherence_trial(group, m, ()).retrieval_success
    )
    uniform_ok = sum(
        1 for m in group.morphisms for e in group.morphisms
        if decoherence_trial(group, m, (e,)).retrieval_success
    )
    return Fraction(empty_ok, n), Fraction(uniform_ok, n * n)


@dataclass(frozen=True)
class MonteCarloDecoherence:
    group: Groupoid
    trials: int
    successes: int
    seed: object


def decoherence_sample(group: Groupoid, trials, seed=None):
    """Seeded sampled version of the uniform single-multiplication environment."""
    rng = seeded_rng(seed)
    successes = 0
    mors = group.morphisms
    for _ in range(trials):
        info = rng.choice(mors)
        e = rng.choice(mors)
        if decoherence_trial(group, info, (e,)).retrieval_success:
            successes += 1
    return MonteCarloDecoherence(group=group, trials=trials, successes=successes,
                                 seed=seed)


@dataclass(frozen=True)
class LandauerReport:
    group: Groupoid
    logical_output: object         # object-indexed factor
    thermal_output: object         # morphism-indexed factor
    heat_alphabet_size: int
    heat_equals_key: bool
    ciphertext_uniform: bool


def landauer_report(transcript: EncryptionTranscript) -> LandauerReport:
    """Classify the output factors and attach the hiding property."""
    group = transcript.group
    counts = ciphertext_distribution(group, transcript.plaintext, comm=transcript.comm)
    flat = set(counts.values()) == {1} and len(counts) == group.mor_count()
    return LandauerReport(
        group=group,
        logical_output=("delta", transcript.ciphertext),
        thermal_output=transcript.heat,
        heat_alphabet_size=group.mor_count(),
        heat_equals_key=(transcript.heat == transcript.key),
        ciphertext_uniform=flat,
    )
