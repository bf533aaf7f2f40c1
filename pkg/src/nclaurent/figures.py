"""Figure rendering for the report paths: contour samples of the local
zeta function and fitted-vs-symbolic Laurent coefficients, written to
image files next to the delimited output."""

from __future__ import annotations

import cmath
import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .oracle import CrossCheckReport, ZetaSample  # noqa: E402


def zeta_contour_figure(samples: list[ZetaSample],
                        coeffs: dict[int, complex], path: str) -> None:
    """Sampled zeta values around the pole and the fitted model."""
    angles = [cmath.phase(s.lam + 1.0) % (2.0 * math.pi) for s in samples]
    order = sorted(range(len(samples)), key=lambda i: angles[i])
    theta = [angles[i] for i in order]
    values = [samples[i].value for i in order]
    radius = abs(samples[0].lam + 1.0)

    model = []
    for t in theta:
        eps = radius * cmath.exp(1j * t)
        model.append(sum(c * eps ** d for d, c in coeffs.items()))

    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9.5, 4))
    ax1.plot(theta, [v.real for v in values], "o", label="Re Z (samples)")
    ax1.plot(theta, [v.imag for v in values], "s", label="Im Z (samples)")
    ax1.plot(theta, [v.real for v in model], "-", lw=1, label="Re Z (fit)")
    ax1.plot(theta, [v.imag for v in model], "--", lw=1, label="Im Z (fit)")
    ax1.set_xlabel(r"arg$(\lambda+1)$")
    ax1.set_ylabel("Z")
    ax1.set_title(f"zeta samples, radius {radius:g}")
    ax1.legend(fontsize=8)

    degrees = sorted(coeffs)
    ax2.bar([str(d) for d in degrees],
            [abs(coeffs[d]) for d in degrees], color="#4878a8")
    ax2.set_yscale("log")
    ax2.set_xlabel("degree of $(\\lambda+1)$")
    ax2.set_ylabel("|fitted coefficient|")
    ax2.set_title("Laurent coefficients")

    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def crosscheck_figure(report: CrossCheckReport, path: str) -> None:
    """Fitted vs symbolic coefficients with per-degree error bars."""
    degrees = [e.degree for e in report.entries]
    labels = [str(d) for d in degrees]

    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9.5, 4))
    width = 0.38
    xs = range(len(degrees))
    ax1.bar([x - width / 2 for x in xs],
            [e.fitted.real for e in report.entries], width,
            label="fitted (contour)", color="#4878a8")
    ax1.bar([x + width / 2 for x in xs],
            [e.symbolic for e in report.entries], width,
            label="symbolic pairing", color="#a85450")
    ax1.set_xticks(list(xs), labels)
    ax1.set_xlabel("degree of $(\\lambda+1)$")
    ax1.set_ylabel("coefficient paired with test function")
    ax1.set_title(f"n = {report.n} cross-check")
    ax1.legend(fontsize=8)

    ax2.semilogy(labels, [max(e.abs_err, 1e-17) for e in report.entries],
                 "o-", label="absolute error")
    ax2.axhline(report.tol, color="gray", ls="--", lw=1,
                label=f"tolerance {report.tol:g}")
    ax2.set_xlabel("degree of $(\\lambda+1)$")
    ax2.set_ylabel("|fitted - symbolic|")
    ax2.set_title("agreement per degree")
    ax2.legend(fontsize=8)

    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
