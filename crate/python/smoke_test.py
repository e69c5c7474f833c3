"""Smoke test for the Python bindings.

Build and install first:
    maturin build --release -m crates/py/Cargo.toml
    pip install target/wheels/hocoalg-*.whl
"""

import hocoalg

S = hocoalg.Structure

e1 = S.builtin("example1")
e2 = S.builtin("example2")
print(e1, e1.generators)

assert e1.check_ainf().passed
assert not e1.check_cinf().passed
assert S.from_json(e1.to_json()).to_json() == e1.to_json()

((elem, r, value),) = e1.symmetrize(3, 5)
print(f"l^{r}({elem}) = {value}")
assert value == "x ⊗ y ⊗ z - x ⊗ z ⊗ y - y ⊗ x ⊗ z + y ⊗ z ⊗ x + z ⊗ x ⊗ y - z ⊗ y ⊗ x"

assert e1.ell3_rank(5) == 1
assert e2.ell3_rank(5) == 0
verdict, _ = hocoalg.compare(e1, e2, 7)
print(verdict)

for sign, left, right in hocoalg.diagonal(4):
    print(f"{sign:+d} {left} {right}")

for report in e2.pipeline(7):
    print(report)
    assert report.passed

print("smoke test ok")
