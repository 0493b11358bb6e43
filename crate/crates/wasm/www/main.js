import init, { sigmaZCurves, packetDensity, sampleShots } from "./pkg/majorana_wasm.js";

const num = (form, name) => Number(form.elements[name].value);

function plot(canvas, xs, series, yRange) {
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  const pad = 30;
  ctx.clearRect(0, 0, w, h);
  const x0 = xs[0], x1 = xs[xs.length - 1];
  const [y0, y1] = yRange;
  const px = (x) => pad + ((x - x0) / (x1 - x0)) * (w - 2 * pad);
  const py = (y) => h - pad - ((y - y0) / (y1 - y0)) * (h - 2 * pad);

  ctx.strokeStyle = "#999";
  ctx.lineWidth = 1;
  ctx.setLineDash([]);
  ctx.beginPath();
  ctx.moveTo(pad, py(Math.max(y0, Math.min(0, y1))));
  ctx.lineTo(w - pad, py(Math.max(y0, Math.min(0, y1))));
  ctx.moveTo(pad, pad);
  ctx.lineTo(pad, h - pad);
  ctx.stroke();
  ctx.fillStyle = "#555";
  ctx.fillText(y1.toPrecision(3), 2, pad);
  ctx.fillText(y0.toPrecision(3), 2, h - pad);
  ctx.fillText(x0.toPrecision(3), pad, h - 8);
  ctx.fillText(x1.toPrecision(3), w - pad - 30, h - 8);

  for (const { ys, color, dash } of series) {
    ctx.strokeStyle = color;
    ctx.lineWidth = 2;
    ctx.setLineDash(dash || []);
    ctx.beginPath();
    ys.forEach((y, i) => (i ? ctx.lineTo(px(xs[i]), py(y)) : ctx.moveTo(px(xs[i]), py(y))));
    ctx.stroke();
  }
}

function spinorParts() {
  const f = document.getElementById("curves");
  return ["ru", "iu", "rl", "il"].map((n) => num(f, n));
}

function drawCurves() {
  const err = document.getElementById("curves-err");
  const n = 401;
  try {
    const out = sigmaZCurves(...spinorParts(), num(document.getElementById("curves"), "omega"), n);
    const t = out.subarray(0, n);
    plot(document.getElementById("curves-plot"), t, [
      { ys: out.subarray(n, 2 * n), color: "#1f77b4" },
      { ys: out.subarray(2 * n, 3 * n), color: "#d62728", dash: [6, 4] },
    ], [-1.05, 1.05]);
    err.textContent = "";
  } catch (e) {
    err.textContent = String(e.message || e);
  }
}

function drawPacket() {
  const f = document.getElementById("packet");
  const err = document.getElementById("packet-err");
  f.elements.tout.value = f.elements.t.value;
  try {
    const out = packetDensity(
      f.elements.equation.value, num(f, "mass"), num(f, "p0"), num(f, "sigma"), num(f, "t"));
    const n = out.length / 2;
    const density = out.subarray(n);
    const peak = Math.max(...density);
    plot(document.getElementById("packet-plot"), out.subarray(0, n),
      [{ ys: density, color: "#2ca02c" }], [0, peak * 1.05 || 1]);
    err.textContent = "";
  } catch (e) {
    err.textContent = String(e.message || e);
  }
}

function drawShots() {
  const f = document.getElementById("shots");
  const err = document.getElementById("shots-err");
  const body = document.querySelector("#shots-table tbody");
  const omega = num(document.getElementById("curves"), "omega");
  try {
    const shots = num(f, "shots");
    const out = sampleShots(...spinorParts(), omega, num(f, "t"), shots, num(f, "seed"));
    body.innerHTML = "";
    ["1r", "2r", "1i", "2i"].forEach((level, k) => {
      const row = body.insertRow();
      [level, out[k], (out[k] / shots).toFixed(4), out[4 + k].toFixed(4)].forEach((v) => {
        row.insertCell().textContent = v;
      });
    });
    err.textContent = "";
  } catch (e) {
    body.innerHTML = "";
    err.textContent = String(e.message || e);
  }
}

await init();
document.getElementById("curves").addEventListener("input", () => { drawCurves(); drawShots(); });
document.getElementById("packet").addEventListener("input", drawPacket);
document.getElementById("shots").addEventListener("input", drawShots);
drawCurves();
drawPacket();
drawShots();
