// Plotting layer for the exact curves. The wasm side returns piecewise
// linear functions as exact fraction strings (breakpoints, slopes, one
// reference value); fractions are converted to floats here, at the last
// moment before drawing.

import init, { sharpness_report, series_report, scenario_report } from "./pkg/padic_nevanlinna_wasm.js";

function frac(text) {
  if (text === "inf") return Infinity;
  if (text === "-inf") return -Infinity;
  const [n, d] = text.split("/");
  return d === undefined ? Number(n) : Number(n) / Number(d);
}

// Evaluate a canonical piecewise-linear function at s by integrating the
// slope step function from the reference point.
function evalPLF(c, s) {
  const bps = c.breakpoints.map(frac);
  const slopes = c.slopes.map(frac);
  const ref = frac(c.reference_s);
  let total = frac(c.reference_value);
  const lo = Math.min(ref, s), hi = Math.max(ref, s);
  const sign = s >= ref ? 1 : -1;
  for (let i = 0; i < slopes.length; i++) {
    const segLo = i === 0 ? -Infinity : bps[i - 1];
    const segHi = i === bps.length ? Infinity : bps[i];
    const a = Math.max(segLo, lo), b = Math.min(segHi, hi);
    if (a < b) total += sign * slopes[i] * (b - a);
  }
  return total;
}

// Vertices of the polyline of a canonical PLF over the view window,
// clipped to its domain.
function polyline(c, viewLo, viewHi) {
  const lo = Math.max(viewLo, frac(c.domain_lo));
  const hi = Math.min(viewHi, frac(c.domain_hi));
  if (lo >= hi) return [];
  const xs = [lo];
  for (const b of c.breakpoints.map(frac)) {
    if (b > lo && b < hi) xs.push(b);
  }
  xs.push(hi);
  return xs.map((x) => [x, evalPLF(c, x)]);
}

const PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"];

function drawAxes(ctx, w, h, toX, toY, xLo, xHi, yLo, yHi) {
  ctx.clearRect(0, 0, w, h);
  ctx.strokeStyle = "#ddd";
  ctx.lineWidth = 1;
  for (let x = Math.ceil(xLo); x <= Math.floor(xHi); x++) {
    ctx.beginPath(); ctx.moveTo(toX(x), 0); ctx.lineTo(toX(x), h); ctx.stroke();
  }
  for (let y = Math.ceil(yLo); y <= Math.floor(yHi); y++) {
    ctx.beginPath(); ctx.moveTo(0, toY(y)); ctx.lineTo(w, toY(y)); ctx.stroke();
  }
  ctx.strokeStyle = "#888";
  if (yLo <= 0 && yHi >= 0) {
    ctx.beginPath(); ctx.moveTo(0, toY(0)); ctx.lineTo(w, toY(0)); ctx.stroke();
  }
  if (xLo <= 0 && xHi >= 0) {
    ctx.beginPath(); ctx.moveTo(toX(0), 0); ctx.lineTo(toX(0), h); ctx.stroke();
  }
}

// Draw named polylines with a shared scale and a small legend.
function plotCurves(canvas, named, viewLo, viewHi) {
  const ctx = canvas.getContext("2d");
  const w = canvas.width, h = canvas.height;
  const lines = named.map(([name, c]) => [name, polyline(c, viewLo, viewHi)])
    .filter(([, pts]) => pts.length > 0);
  let yLo = 0, yHi = 1;
  for (const [, pts] of lines) {
    for (const [, y] of pts) {
      yLo = Math.min(yLo, y);
      yHi = Math.max(yHi, y);
    }
  }
  const pad = 0.08 * (yHi - yLo || 1);
  yLo -= pad; yHi += pad;
  const toX = (x) => ((x - viewLo) / (viewHi - viewLo)) * (w - 20) + 10;
  const toY = (y) => h - 18 - ((y - yLo) / (yHi - yLo)) * (h - 30);
  drawAxes(ctx, w, h, toX, toY, viewLo, viewHi, yLo, yHi);
  lines.forEach(([name, pts], k) => {
    ctx.strokeStyle = PALETTE[k % PALETTE.length];
    ctx.lineWidth = 2;
    ctx.beginPath();
    pts.forEach(([x, y], i) => (i === 0 ? ctx.moveTo(toX(x), toY(y)) : ctx.lineTo(toX(x), toY(y))));
    ctx.stroke();
    ctx.fillStyle = ctx.strokeStyle;
    ctx.font = "12px sans-serif";
    ctx.fillText(name, 16 + 70 * k, 14);
  });
}

// Scatter the support/hull picture of a Newton polygon.
function plotPolygon(canvas, vertices) {
  const ctx = canvas.getContext("2d");
  const w = canvas.width, h = canvas.height;
  const pts = vertices.map(([i, v]) => [i, frac(v)]);
  let xHi = 1, yLo = 0, yHi = 1;
  for (const [x, y] of pts) {
    xHi = Math.max(xHi, x);
    yLo = Math.min(yLo, y);
    yHi = Math.max(yHi, y);
  }
  const toX = (x) => (x / (xHi + 0.5)) * (w - 40) + 24;
  const toY = (y) => h - 24 - ((y - yLo + 0.5) / (yHi - yLo + 1)) * (h - 40);
  drawAxes(ctx, w, h, toX, toY, 0, xHi + 0.5, yLo - 0.5, yHi + 0.5);
  ctx.strokeStyle = "#1f77b4";
  ctx.lineWidth = 2;
  ctx.beginPath();
  pts.forEach(([x, y], i) => (i === 0 ? ctx.moveTo(toX(x), toY(y)) : ctx.lineTo(toX(x), toY(y))));
  ctx.stroke();
  ctx.fillStyle = "#d62728";
  for (const [x, y] of pts) {
    ctx.beginPath();
    ctx.arc(toX(x), toY(y), 4, 0, 2 * Math.PI);
    ctx.fill();
  }
  ctx.fillStyle = "#555";
  ctx.font = "12px sans-serif";
  ctx.fillText("(i, v_p(a_i)) with lower hull", 16, 14);
}

function setStatus(el, ok, message) {
  el.className = ok ? "pass" : "error";
  el.textContent = message;
}

function curveList(curves, preferred) {
  const names = Object.keys(curves);
  const ordered = preferred.filter((n) => names.includes(n));
  for (const n of names) if (!ordered.includes(n)) ordered.push(n);
  return ordered.map((n) => [n, curves[n]]);
}

function wireSharpness() {
  const run = () => {
    const status = document.getElementById("sharp-status");
    try {
      const n = Number(document.getElementById("sharp-n").value);
      const d = Number(document.getElementById("sharp-d").value);
      const p = Number(document.getElementById("sharp-p").value);
      const data = JSON.parse(sharpness_report(n, d, BigInt(p)));
      setStatus(status, data.passed, data.passed ? "exact equality holds" : "FAILED");
      const named = curveList(data.curves, ["T", "sum", "bound", "margin"]);
      plotCurves(document.getElementById("sharp-plot"), named, -1, 4);
      document.getElementById("sharp-defects").textContent =
        "defects: " + data.defects.join(", ");
      document.getElementById("sharp-report").textContent = data.report;
    } catch (e) {
      setStatus(status, false, String(e));
    }
  };
  document.getElementById("sharp-run").addEventListener("click", run);
  run();
}

function wireSeries() {
  const run = () => {
    const status = document.getElementById("series-status");
    try {
      const coeffs = document.getElementById("series-coeffs").value;
      const p = Number(document.getElementById("series-p").value);
      const data = JSON.parse(series_report(coeffs, BigInt(p)));
      setStatus(status, true, "ok");
      plotPolygon(document.getElementById("series-polygon"), data.polygon.vertices);
      const radii = data.polygon.root_log_radii.map(frac);
      const span = radii.length ? [Math.min(...radii) - 1.5, Math.max(...radii) + 1.5] : [-2, 2];
      plotCurves(
        document.getElementById("series-curves"),
        [["gauss norm", data.curves.gauss_norm], ["counting N", data.curves.counting]],
        span[0],
        span[1],
      );
      document.getElementById("series-report").textContent =
        "series: " + data.series + "\nroot log-radii: [" + data.polygon.root_log_radii.join(", ") + "]";
    } catch (e) {
      setStatus(status, false, String(e));
    }
  };
  document.getElementById("series-run").addEventListener("click", run);
  run();
}

function wireScenario() {
  const run = () => {
    const status = document.getElementById("scenario-status");
    try {
      const text = document.getElementById("scenario-text").value;
      const sub = document.getElementById("scenario-sub").value;
      const data = JSON.parse(scenario_report(text, sub));
      setStatus(status, data.passed, data.passed ? "PASS" : "FAIL");
      const named = curveList(data.curves, ["T", "sum", "bound", "margin"]);
      plotCurves(document.getElementById("scenario-plot"), named, -1, 4);
      document.getElementById("scenario-report").textContent = data.report;
    } catch (e) {
      setStatus(status, false, String(e));
    }
  };
  document.getElementById("scenario-run").addEventListener("click", run);
  run();
}

await init();
wireSharpness();
wireSeries();
wireScenario();
