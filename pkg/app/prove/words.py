"""
Symbolic words and the conclusions they license.

Three kinds of word are accepted:
  "coc"      cyclic word over {c, o}: c runs c1 then c2, o runs o1 then o2
  "1,2,3"    cyclic word of approach depths, each k a loop N_K ->k N_K
  "Oc/A"     motion schema X/Y for the past and future behaviour, with
             X, Y in {C, Oc, Os, A}
Certifying a word only checks that every relation its expansion uses has
a certificate; the shadowing and disc theorems do the rest.
"""

import enum
import logging
import re
from dataclasses import dataclass

from core.exceptions import ConfigurationError, MissingPremise
from cover import Certificate, CertificateKind
from prove.scenarios import CHART_AVOIDANCE, approach_premises, expected_sequences

logger = logging.getLogger(__name__)

DISC = "disc:N0"
MOTIONS = ("C", "Oc", "Os", "A")
# Os is accepted for the oscillating-to-collision type in collision schemas
MOTION_ALIASES = {"Os": "Oc"}
SCHEMA_PATTERN = re.compile(r"^(C|Oc|Os|A)/(C|Oc|Os|A)$")
DEPTHS_PATTERN = re.compile(r"^\d+(,\d+)*$")
CYCLIC_PATTERN = re.compile(r"^[co]+$")


class WordKind(str, enum.Enum):
    CYCLIC = "cyclic"
    DEPTHS = "depths"
    SCHEMA = "schema"


@dataclass(frozen=True)
class SymbolicWord:
    text: str
    kind: WordKind
    symbols: tuple

    @classmethod
    def parse(cls, text):
        text = "".join(str(text).split())
        if CYCLIC_PATTERN.match(text):
            return cls(text, WordKind.CYCLIC, tuple(text))
        if DEPTHS_PATTERN.match(text):
            depths = tuple(int(k) for k in text.split(","))
            if min(depths) < 1:
                raise ConfigurationError(f"approach depths start at 1: {text!r}")
            return cls(text, WordKind.DEPTHS, depths)
        match = SCHEMA_PATTERN.match(text)
        if match:
            return cls(text, WordKind.SCHEMA, match.groups())
        raise ConfigurationError(
            f"not a word: {text!r}; expected letters c/o, depths like 1,2,3 or a schema like Oc/A"
        )


def _unique(ids):
    return list(dict.fromkeys(ids))


def loop_premises(K):
    """N_K ->k N_K for every k: the half sequence from N4, its mirror, the family and avoidance."""
    o2 = expected_sequences(K)["o2"]
    mirrored_tail = [rid for rid in o2 if rid not in ("SN3=>SN2", "SN2<=SN1", "SN1<=N0", "SN4<=SN3")]
    avoidance = [f"avoid:P{k}" for k in range(5, K + 1)] + [CHART_AVOIDANCE]
    return _unique(approach_premises(K) + mirrored_tail + avoidance)


def _arrows(depths):
    return " ".join(f"-{k}-> NK" for k in depths)


def expand(word, K):
    """(premise ids, statement, displayed sequence) of a parsed word."""
    sequences = expected_sequences(K)
    if word.kind is WordKind.CYCLIC:
        ids = []
        for symbol in word.symbols:
            ids += sequences["c1"] + sequences["c2"] if symbol == "c" else sequences["o1"] + sequences["o2"]
        visits = ", ".join("avoids N_K" if s == "c" else "visits N_K" for s in word.symbols)
        statement = (
            f"periodic orbit returning to N0 after each symbol of ({word.text}) and, in order, {visits}"
        )
        return _unique(ids), statement, " ".join(f"N0 -{s}-> N0" for s in word.symbols)

    if word.kind is WordKind.DEPTHS:
        statement = (
            f"periodic orbit through N_K whose passes near collision reach Q_4k for k = "
            f"{', '.join(map(str, word.symbols))}, without colliding"
        )
        return loop_premises(K), statement, f"NK {_arrows(word.symbols)}"

    past, future = (MOTION_ALIASES.get(x, x) for x in word.symbols)
    if past == "C" and future == "C":
        return ["h0"], "ejection-collision orbit through w0 and the S-fixed point w2", "w0 -> w2 -> w0"

    ids = loop_premises(K)
    left = {"Oc": "... -3-> NK -2-> NK -1-> NK", "A": "... -1-> NK -1-> NK"}
    right = {"Oc": "NK -1-> NK -2-> NK -3-> ...", "A": "NK -1-> NK -1-> ..."}
    if future == "C":
        ids = ids + sequences["o2"] + [DISC]
        display = f"{left[past]} -c-> N0"
    elif past == "C":
        ids = sequences["o1"] + ids + [DISC]
        display = f"N0 -c-> {right[future]}"
    else:
        display = f"{left[past]} ... {right[future]}"
    x, y = word.symbols
    statement = f"{x}^- and {y}^+ intersect: some orbit has past behaviour {x} and future behaviour {y}"
    return _unique(ids), statement, display


def certify_word(word, report):
    """Conclusion certificate for a word, or MissingPremise naming the first absent relation."""
    if not isinstance(word, SymbolicWord):
        word = SymbolicWord.parse(word)
    premises, statement, display = expand(word, report.K)
    for relation_id in premises:
        if not report.has(relation_id):
            raise MissingPremise(relation_id)
    conclusion = Certificate(
        relation_id=f"word:{word.text}",
        kind=CertificateKind.WORD,
        source=word.text,
        target=word.kind.value,
        provenance="shadowing",
        premises=tuple(premises),
        details={"statement": statement, "sequence": display},
    )
    logger.info("word %s: %s", word.text, statement)
    return conclusion
