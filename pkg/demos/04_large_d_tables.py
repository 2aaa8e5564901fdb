"""Critical points in high dimension, exactly and numerically.

Run: python demos/04_large_d_tables.py
"""
from lattice_expansion.expansion import consistency_chain, expansion_table, ratio_report, render

for row in expansion_table("animal", 6, dims=(10,)):
    print(f"{row.quantity} order {row.order} ({row.status}): {row.coefficient}")

# The z_c coefficients through third order are not independent data: they
# follow from the coefficients of Pi-hat, G(s) and g_circ.
for model in ("tree", "animal"):
    chain = consistency_chain(model)
    print(f"\n{model}: rebuilt z_c = {chain.z_c}")
    print(f"{model}: agrees with the table: {chain.holds}")

# Ratio method at d = 3.  Seven bonds is far from asymptotic, and the large-d
# prediction is only a rough guide this low, but they land in the same range.
rep = ratio_report("tree", 3, 7)
for n, r in enumerate(rep.ratios, start=1):
    print(f"t_{n}/t_{n - 1} = {r} = {render(float(r))}")
print("prediction 1/z_c:", render(rep.lambda_pred))
