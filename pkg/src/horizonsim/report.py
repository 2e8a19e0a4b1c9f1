"""CSV and JSON renderings of entropy traces and ensemble curves."""

from __future__ import annotations

import json
import math

LN2 = math.log(2.0)


def fmt_real(x: float) -> str:
    # fixed 12 decimals; adding 0.0 folds -0.0 into 0.0
    s = f"{float(x) + 0.0:.12f}"
    return "0.000000000000" if s == "-0.000000000000" else s


def _scale(bits):
    return 1.0 / LN2 if bits else 1.0


def render_trace_csv(trace, pair_columns=(), bits=False) -> str:
    """``event_index,time,event,S_total[,pairs...]``, one row per trace sample."""
    k = _scale(bits)
    header = ["event_index", "time", "event", "S_total", *pair_columns]
    rows = [",".join(header)]
    for s in trace:
        cells = [str(s.event_index), fmt_real(s.time), s.event, fmt_real(s.s_total * k)]
        cells += [fmt_real(s.pairs[c] * k) for c in pair_columns]
        rows.append(",".join(cells))
    return "\n".join(rows) + "\n"


def render_trace_json(trace, pair_columns=(), bits=False) -> str:
    k = _scale(bits)
    records = []
    for s in trace:
        rec = {"event_index": s.event_index, "time": s.time, "event": s.event,
               "S_total": s.s_total * k}
        for c in pair_columns:
            rec[c] = s.pairs[c] * k
        records.append(rec)
    return json.dumps({"units": "bits" if bits else "nats", "samples": records}, indent=2) + "\n"


def render_page_curve_csv(curve) -> str:
    rows = ["time,S_sum,S_mean"]
    for t, total, mean in zip(curve.times, curve.total, curve.mean):
        rows.append(f"{fmt_real(t)},{fmt_real(total)},{fmt_real(mean)}")
    return "\n".join(rows) + "\n"


def format_state(state, names) -> str:
    """Non-zero amplitudes as ``(re+imj)|bits>`` terms, bits ordered as ``names``."""
    n = state.n_qubits
    terms = []
    for idx, a in enumerate(state.amplitudes):
        if abs(a) <= 1e-15:
            continue
        bits = format(idx, f"0{n}b")
        terms.append(f"({fmt_real(a.real)}{'+' if a.imag >= 0 else '-'}{fmt_real(abs(a.imag))}j)|{bits}>")
    return f"|{' '.join(names)}> = " + " + ".join(terms)
