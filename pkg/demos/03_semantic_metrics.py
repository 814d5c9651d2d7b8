"""Embedding metrics
===================

The exact optimal-transport solver, mover similarity between texts, and
IDF-weighted greedy soft matching, all over a tiny hand-made embedding
table (real runs load a file produced by embed-export).
"""

import numpy as np

from intent_eval import bert_score, idf_weights, make_document, smd_similarity, transport_solve
from intent_eval.semantic import EmbeddingTable, IdfTable
from intent_eval.corpus import Sentence

# --- exact transport on a 2x2 instance -------------------------------------
cost = np.array([[0.0, 1.0], [1.0, 0.0]])
plan = transport_solve(cost, [0.5, 0.5], [0.5, 0.5])
print("transport flow:\n", plan.flow, "\ncost:", plan.cost)

# --- a toy embedding space ---------------------------------------------------
entries = {
    "court": np.array([1.0, 0.0]),
    "judge": np.array([0.9, 0.2]),
    "robbery": np.array([0.0, 1.0]),
    "theft": np.array([0.1, 0.8]),
}
table = EmbeddingTable(dim=2, kind="token", entries=entries)


def sentence(tokens, index=0):
    text = " ".join(tokens)
    return Sentence(index=index, text=text, tokens=tuple(tokens),
                    char_span=(0, len(text)))


cand = (sentence(["court", "robbery"]),)
ref = (sentence(["judge", "theft"]),)

for kind in ("wms", "sms", "s+wms"):
    sim = smd_similarity(cand, ref, table, kind=kind)
    print(f"{kind:6s} similarity = {sim.value:.4f} "
          f"(distance {sim.components['distance']:.4f})")

# --- greedy soft matching with idf weights ----------------------------------
docs = [
    make_document("d1", "robbery", "The court heard the robbery case."),
    make_document("d2", "robbery", "The court convicted the accused."),
]
idf = idf_weights(docs)
print("\nidf('robbery') =", round(idf.weight("robbery"), 4),
      " idf('court') =", round(idf.weight("court"), 4))

score = bert_score(["court", "robbery"], ["judge", "theft"], table,
                   IdfTable.uniform())
print(f"soft-match P={score.components['precision']:.4f} "
      f"R={score.components['recall']:.4f} F1={score.value:.4f}")
