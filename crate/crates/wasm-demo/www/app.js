// Demo page logic. Expects the wasm-bindgen output of dispersim-wasm under
// ./pkg (see the repository README for the one-line build command).

import init, {
  orbit_profile,
  dispersion_curves,
  monte_carlo_convergence,
} from "./pkg/dispersim_wasm.js";

const statusLine = document.getElementById("status");

function fail(msg) {
  statusLine.textContent = msg;
  throw new Error(msg);
}

function callJson(fn, ...args) {
  const doc = JSON.parse(fn(...args));
  if (doc.error) fail(`model error: ${doc.error}`);
  return doc;
}

// --- tiny canvas plotting helpers -----------------------------------------

function frame(ctx, x0, y0, w, h) {
  ctx.strokeStyle = "#d7dee6";
  ctx.strokeRect(x0, y0, w, h);
}

function mapper(lo, hi, a, b) {
  const span = hi - lo || 1;
  return (v) => a + ((v - lo) / span) * (b - a);
}

function polyline(ctx, xs, ys, mapX, mapY, color, dashed = false) {
  ctx.save();
  ctx.strokeStyle = color;
  ctx.lineWidth = 1.6;
  if (dashed) ctx.setLineDash([6, 4]);
  ctx.beginPath();
  xs.forEach((x, i) => {
    const px = mapX(x);
    const py = mapY(ys[i]);
    i === 0 ? ctx.moveTo(px, py) : ctx.lineTo(px, py);
  });
  ctx.stroke();
  ctx.restore();
}

function dots(ctx, xs, ys, mapX, mapY, color) {
  ctx.fillStyle = color;
  xs.forEach((x, i) => {
    ctx.beginPath();
    ctx.arc(mapX(x), mapY(ys[i]), 3, 0, 2 * Math.PI);
    ctx.fill();
  });
}

function label(ctx, text, x, y, color = "#68788a") {
  ctx.fillStyle = color;
  ctx.font = "12px system-ui";
  ctx.fillText(text, x, y);
}

// --- panel 1: orbit & presence PDF/CDF ------------------------------------

function drawOrbit() {
  const eps = parseFloat(document.getElementById("orbit-eps").value);
  document.getElementById("orbit-eps-out").value = eps.toFixed(2);
  const doc = callJson(orbit_profile, eps, 400);

  const canvas = document.getElementById("orbit-canvas");
  const ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);

  // Left pane: the ellipse, focus at the origin.
  const pane = { x: 15, y: 15, w: 390, h: 300 };
  frame(ctx, pane.x, pane.y, pane.w, pane.h);
  const ex = doc.ellipse.x, ey = doc.ellipse.y;
  const lim = 2.05;
  const mapX = mapper(-lim, lim, pane.x, pane.x + pane.w);
  const mapY = mapper(-lim, lim, pane.y + pane.h, pane.y);
  polyline(ctx, ex, ey, mapX, mapY, "#0b6e99");
  ctx.fillStyle = "#b4541f";
  ctx.beginPath();
  ctx.arc(mapX(0), mapY(0), 4, 0, 2 * Math.PI);
  ctx.fill();
  // perigee / apogee markers
  dots(ctx, [ex[0]], [ey[0]], mapX, mapY, "#2e7d32");
  const mid = Math.floor(ex.length / 2);
  dots(ctx, [ex[mid]], [ey[mid]], mapX, mapY, "#6a1b9a");
  label(ctx, "perigee (prolinol side)", mapX(ex[0]) - 60, mapY(ey[0]) - 10, "#2e7d32");
  label(ctx, "apogee (nitro side)", mapX(ex[mid]) + 8, mapY(ey[mid]) - 10, "#6a1b9a");

  // Right pane: pdf and cdf vs theta.
  const p2 = { x: 450, y: 15, w: 390, h: 300 };
  frame(ctx, p2.x, p2.y, p2.w, p2.h);
  const maxPdf = Math.max(...doc.pdf) * 1.15;
  const mX = mapper(0, 2 * Math.PI, p2.x, p2.x + p2.w);
  const mPdf = mapper(0, maxPdf, p2.y + p2.h, p2.y);
  const mCdf = mapper(0, 1, p2.y + p2.h, p2.y);
  polyline(ctx, doc.theta, doc.pdf, mX, mPdf, "#0b6e99");
  polyline(ctx, doc.theta, doc.cdf, mX, mCdf, "#b4541f", true);
  label(ctx, "pdf(θ)", p2.x + 8, p2.y + 16, "#0b6e99");
  label(ctx, "cdf(θ), dashed", p2.x + 8, p2.y + 32, "#b4541f");
  label(ctx, "θ: 0 → 2π", p2.x + p2.w - 70, p2.y + p2.h - 8);
}

// --- panel 2: dispersion explorer ------------------------------------------

function drawDispersion() {
  const eps = parseFloat(document.getElementById("disp-eps").value);
  const z = parseFloat(document.getElementById("disp-z").value);
  const u = parseFloat(document.getElementById("disp-u").value);
  document.getElementById("disp-eps-out").value = eps.toFixed(2);
  document.getElementById("disp-z-out").value = z.toFixed(1);
  document.getElementById("disp-u-out").value = u.toFixed(3);

  const doc = callJson(dispersion_curves, eps, z, u, 3.0, 480, 2000, 160);

  const canvas = document.getElementById("disp-canvas");
  const ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  const pane = { x: 45, y: 12, w: 800, h: 330 };
  frame(ctx, pane.x, pane.y, pane.w, pane.h);

  const all = [
    ...doc.n_x, ...doc.n_y, ...doc.sellmeier_x, ...doc.sellmeier_y,
    ...doc.experimental.n_x, ...doc.experimental.n_y,
  ];
  const lo = Math.min(...all) - 0.05;
  const hi = Math.max(...all) + 0.05;
  const mX = mapper(480, 2000, pane.x, pane.x + pane.w);
  const mY = mapper(lo, hi, pane.y + pane.h, pane.y);

  polyline(ctx, doc.lambda_nm, doc.n_x, mX, mY, "#0b6e99");
  polyline(ctx, doc.lambda_nm, doc.n_y, mX, mY, "#b4541f");
  polyline(ctx, doc.lambda_nm, doc.sellmeier_x, mX, mY, "#0b6e99", true);
  polyline(ctx, doc.lambda_nm, doc.sellmeier_y, mX, mY, "#b4541f", true);
  dots(ctx, doc.experimental.lambda_nm, doc.experimental.n_x, mX, mY, "#0b6e99");
  dots(ctx, doc.experimental.lambda_nm, doc.experimental.n_y, mX, mY, "#b4541f");

  label(ctx, "n_x: model —, Sellmeier --, measured •", pane.x + 10, pane.y + 16, "#0b6e99");
  label(ctx, "n_y: model —, Sellmeier --, measured •", pane.x + 10, pane.y + 32, "#b4541f");
  label(ctx, "λ: 480 → 2000 nm", pane.x + pane.w - 110, pane.y + pane.h + 14);
  label(ctx, hi.toFixed(2), 8, pane.y + 12);
  label(ctx, lo.toFixed(2), 8, pane.y + pane.h);
}

// --- panel 3: Monte-Carlo convergence --------------------------------------

function drawConvergence() {
  const lambda = parseFloat(document.getElementById("mc-lambda").value);
  const axis = document.getElementById("mc-axis").value;
  const seed = BigInt(document.getElementById("mc-seed").value || "0");
  const maxExp = parseInt(document.getElementById("mc-samples").value, 10);
  const maxSamples = 1 << maxExp;
  document.getElementById("mc-lambda-out").value = lambda;
  document.getElementById("mc-samples-out").value = maxSamples;

  // 0.5 µm film keeps the layer count small enough for live sliders.
  const doc = callJson(
    monte_carlo_convergence, 0.26, 15.4, 1.4, 0.5, lambda, axis, maxSamples, seed,
  );

  const canvas = document.getElementById("mc-canvas");
  const ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  const pane = { x: 45, y: 12, w: 800, h: 280 };
  frame(ctx, pane.x, pane.y, pane.w, pane.h);

  const det = doc.deterministic_n;
  const spread = Math.max(
    ...doc.steps.map((s) => Math.abs(s.n - det) + 3 * s.stderr),
    det * 1e-4,
  );
  const mX = mapper(Math.log2(doc.steps[0].samples), Math.log2(maxSamples), pane.x + 30, pane.x + pane.w - 30);
  const mY = mapper(det - 1.2 * spread, det + 1.2 * spread, pane.y + pane.h, pane.y);

  ctx.strokeStyle = "#2e7d32";
  ctx.beginPath();
  ctx.moveTo(pane.x, mY(det));
  ctx.lineTo(pane.x + pane.w, mY(det));
  ctx.stroke();
  label(ctx, `deterministic n = ${det.toFixed(6)}`, pane.x + 10, mY(det) - 6, "#2e7d32");

  doc.steps.forEach((s) => {
    const px = mX(Math.log2(s.samples));
    ctx.strokeStyle = "#0b6e99";
    ctx.beginPath();
    ctx.moveTo(px, mY(s.n - 3 * s.stderr));
    ctx.lineTo(px, mY(s.n + 3 * s.stderr));
    ctx.stroke();
    ctx.fillStyle = "#0b6e99";
    ctx.beginPath();
    ctx.arc(px, mY(s.n), 3.5, 0, 2 * Math.PI);
    ctx.fill();
    label(ctx, String(s.samples), px - 10, pane.y + pane.h + 14);
  });
  label(ctx, "repetitions (log scale)", pane.x + pane.w - 140, pane.y + pane.h + 28);
  label(ctx, `film: 0.5 µm (${doc.layers} layers), seed ${seed}`, pane.x + 10, pane.y + 16);
}

// --- wiring -----------------------------------------------------------------

async function main() {
  await init();
  statusLine.textContent = "";
  const redraw = [
    ["orbit-eps", drawOrbit],
    ["disp-eps", drawDispersion],
    ["disp-z", drawDispersion],
    ["disp-u", drawDispersion],
    ["mc-lambda", drawConvergence],
    ["mc-axis", drawConvergence],
    ["mc-seed", drawConvergence],
    ["mc-samples", drawConvergence],
  ];
  for (const [id, fn] of redraw) {
    document.getElementById(id).addEventListener("input", fn);
  }
  drawOrbit();
  drawDispersion();
  drawConvergence();
}

main().catch((e) => fail(`failed to start: ${e}`));
