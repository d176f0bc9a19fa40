"""Smoke test for the h90py extension. Run after `pip install --no-build-isolation -e crates/py`."""

import h90py

# free block of size 3 at p = 3
m = h90py.CyclicModule.from_blocks(3, [3])
assert m.is_free() and m.h1_dim() == 0
assert m.profile() == [0, 0, 1]

r = h90py.CyclicModule.random(5, [1, 2, 5], seed=7)
assert sorted(r.block_sizes()) == [1, 2, 5]
assert r.hs_equivalences().passed

model = h90py.gen_realizable(3, 1, 1, 1, seed=42)
assert model.validate(require_a7=True).passed
assert model.criterion_podd().verdict == model.h90_holds().verdict
assert model.small_h90().verdict == model.h90_holds().verdict
assert h90py.ExtensionModel.from_text(model.to_text()).fingerprint() == model.fingerprint()

fixtures = dict(h90py.stored_fixtures())
lemma = fixtures["negative_length_lemma_p5_v3.h90"].check_length_lemma()
assert not lemma.passed and lemma.witnesses

local = h90py.local_tower(5, "u", 3)
assert local.h90_verdicts() == ["fail", "pass", "pass"]
assert local.hereditary().passed
assert local.model(1).h90_holds().witnesses[0][1] == [0, 1]
assert all(v == "pass" for v in h90py.ff_tower(3, 7, 3).h90_verdicts())
assert h90py.real_tower(5).consistency().passed

assert h90py.hilbert_symbol(2, 5, 5) == -1
assert h90py.hilbert_symbol(5, 5, 5) == 1

try:
    h90py.ff_tower(3, 8, 2)
except ValueError as e:
    assert "root of unity" in str(e)
else:
    raise AssertionError("expected ValueError")

print("h90py smoke test passed")
