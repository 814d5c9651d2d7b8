"""Lexical baselines
===================

BLEU (clipped n-gram precision with brevity penalty), METEOR (unigram
alignment with a fragmentation penalty) and ROUGE-L (longest common
subsequence F1) on a pair of toy texts.
"""

from intent_eval import bleu, meteor, rouge_l, tokenize

reference = tokenize(
    "The appellant was convicted of robbery and the stolen ornaments were "
    "recovered from his house."
)
candidate = tokenize(
    "The appellant was convicted of robbery. Ornaments were recovered."
)

b = bleu(candidate, reference)
print(f"BLEU      = {b.value:.4f}")
for n in range(1, 5):
    print(f"  p{n} = {b.components[f'p{n}']:.4f}")
print(f"  brevity penalty = {b.components['brevity_penalty']:.4f}")

m = meteor(candidate, reference)
print(f"\nMETEOR    = {m.value:.4f}")
print(f"  matches = {m.components['matches']:.0f}, "
      f"chunks = {m.components['chunks']:.0f}, "
      f"penalty = {m.components['penalty']:.4f}")

r = rouge_l(candidate, reference)
print(f"\nROUGE-L   = {r.value:.4f}")
print(f"  lcs = {r.components['lcs']:.0f}, "
      f"precision = {r.components['precision']:.4f}, "
      f"recall = {r.components['recall']:.4f}")

# identical texts pin the metrics at their maxima
x = tokenize("a completely identical sentence")
print(f"\nidentity: bleu={bleu(x, x).value:.3f}, "
      f"meteor={meteor(x, x).value:.3f}, rouge_l={rouge_l(x, x).value:.3f}")
