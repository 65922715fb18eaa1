#!/usr/bin/env python3
"""
Example usage of the Gauss HUP Verifier as a library.
"""

import numpy as np

from gauss_hup.hilbert import hilbert
from gauss_hup.interval_maps import wandering_bound, wandering_measure
from gauss_hup.kg_fourier import LatticeCross, f0_measure, lattice_residual_scan, spiral_samples
from gauss_hup.models import GridFunction, MapParams, WanderingQuery, constant, line_indicator
from gauss_hup.transfer_ops import OperatorConfig, OperatorKind, iterate_path, l1_norm
from gauss_hup.verification_suite import run_campaign


def main():
    """Walk through one computation from each module."""

    print("Gauss HUP Verifier - Example Usage")
    print("=" * 50)

    # Example 1: L1 decay of the sigma subtransfer operator
    print("Example 1: Subtransfer iterates")
    print("-" * 30)
    op = OperatorKind.parse("SubS", 0.6)
    cfg = OperatorConfig(j_max=2048)
    f = GridFunction.from_closed_form(cfg.grid_for(op.params), constant(1.0))
    for n, g in iterate_path(op, f, 5, cfg):
        print(f"  n={n}  ||S^n 1||_1 = {l1_norm(g):.6e}")
    print()

    # Example 2: wandering sets shrink geometrically
    print("Example 2: Wandering sets")
    print("-" * 30)
    params = MapParams.sigma(0.5)
    for depth in range(1, 5):
        q = WanderingQuery(params, depth)
        print(f"  N={depth}  measure={wandering_measure(q):.6f}  bound={wandering_bound(q):.6f}")
    print()

    # Example 3: Hilbert transform of an indicator
    print("Example 3: Hilbert transform")
    print("-" * 30)
    box = line_indicator(-1.0, 1.0)
    for x in (0.0, 2.0, 5.0):
        exact = np.log(abs((x + 1) / (x - 1))) / np.pi
        print(f"  H[1_[-1,1]]({x}) = {hilbert(box, x):.8f}  (closed form {exact:.8f})")
    print()

    # Example 4: the critical density on the lattice cross
    print("Example 4: Lattice-cross residuals")
    print("-" * 30)
    entries, worst = lattice_residual_scan(f0_measure(), LatticeCross(m_max=3, n_max=3))
    for entry in entries[:4]:
        residual = entry.residual if entry.residual is not None else float("nan")
        print(f"  {entry.label:8s} residual={residual:.2e}")
    print(f"  max residual: {worst:.2e}")
    print()

    # Example 5: the sine/cosine-integral spiral stays away from 0
    rows, minimum = spiral_samples(0.1, 10.0, 0.1)
    print(f"Example 5: min |ci(pi x) + i si(pi x)| over {len(rows)} samples = {minimum:.6f}")
    print()

    # Example 6: a full campaign
    report = run_campaign("cor-onebranch")
    status = "passed" if report.passed else "failed"
    print(f"Example 6: campaign {report.campaign_id} {status} ({len(report.checks)} checks)")


if __name__ == "__main__":
    main()
