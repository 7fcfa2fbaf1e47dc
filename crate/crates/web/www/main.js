import init, {
  trace_loop, bode_frequencies, bode_magnitude, bode_phase, cutoff_frequency, snr_sweep,
} from "./pkg/pe_web.js";

const $ = (id) => document.getElementById(id);
const num = (id) => parseFloat($(id).value);

function bind(id, fmt, onChange) {
  const show = () => { $(id + "-out").textContent = fmt($(id).value); };
  $(id).addEventListener("input", () => { show(); onChange(); });
  show();
}

// Axes and one or more polylines. `series` = [{x, y, color, dots}].
function plot(canvas, series, { xlabel, ylabel, logx = false }) {
  const ctx = canvas.getContext("2d");
  const W = canvas.width, H = canvas.height, pad = 48;
  ctx.clearRect(0, 0, W, H);
  const tx = (v) => (logx ? Math.log10(v) : v);
  const xs = series.flatMap((s) => s.x.map(tx)).filter(Number.isFinite);
  const ys = series.flatMap((s) => Array.from(s.y)).filter(Number.isFinite);
  if (!xs.length) return;
  let [x0, x1] = [Math.min(...xs), Math.max(...xs)];
  let [y0, y1] = [Math.min(...ys), Math.max(...ys)];
  if (y1 === y0) { y0 -= 1; y1 += 1; }
  const my = 0.08 * (y1 - y0); y0 -= my; y1 += my;
  const px = (v) => pad + ((tx(v) - x0) / (x1 - x0)) * (W - 2 * pad);
  const py = (v) => H - pad - ((v - y0) / (y1 - y0)) * (H - 2 * pad);

  ctx.strokeStyle = "#8a96a8"; ctx.fillStyle = "#4a5566"; ctx.font = "11px sans-serif";
  ctx.strokeRect(pad, pad, W - 2 * pad, H - 2 * pad);
  for (let k = 0; k <= 4; k++) {
    const yv = y0 + (k / 4) * (y1 - y0), xv = x0 + (k / 4) * (x1 - x0);
    ctx.fillText(yv.toPrecision(3), 4, py(yv) + 4);
    ctx.fillText(logx ? "1e" + xv.toFixed(1) : xv.toPrecision(3), pad + (k / 4) * (W - 2 * pad) - 14, H - pad + 16);
  }
  ctx.fillText(xlabel, W / 2 - 30, H - 8);
  ctx.save(); ctx.translate(12, H / 2 + 30); ctx.rotate(-Math.PI / 2); ctx.fillText(ylabel, 0, 0); ctx.restore();

  for (const s of series) {
    ctx.strokeStyle = ctx.fillStyle = s.color;
    ctx.beginPath();
    s.x.forEach((x, i) => {
      if (s.dots) { ctx.fillRect(px(x) - 3, py(s.y[i]) - 3, 6, 6); return; }
      i ? ctx.lineTo(px(x), py(s.y[i])) : ctx.moveTo(px(x), py(s.y[i]));
    });
    if (!s.dots) ctx.stroke();
  }
}

function drawLoop() {
  const out = $("loop-readout");
  try {
    const v = trace_loop(num("pr"), num("ps"), num("ec"), num("ratio"), num("clin"));
    const e = Array.from(v.field()), p = v.polarization();
    e.push(e[0]);
    const closed = Array.from(p); closed.push(p[0]);
    plot($("loop"), [{ x: e, y: closed, color: "#b03a2e" }], { xlabel: "E (MV/m)", ylabel: "P (µC/cm²)" });
    out.textContent =
      `Pr   ${v.remnant().toFixed(3)} µC/cm²\nEc   ${v.coercive().toFixed(2)} MV/m\n` +
      `Ps   ${v.saturation().toFixed(3)} µC/cm²\nloss ${v.area().toFixed(1)} kJ/m³ per cycle`;
    v.free();
  } catch (err) {
    out.textContent = String(err.message || err);
  }
}

function drawBode() {
  const k = num("gain");
  const f = bode_frequencies(241);
  const mag = bode_magnitude(k, f), ph = bode_phase(k, f);
  const fx = Array.from(f);
  const top = Math.max(...mag);
  plot($("bode"), [{ x: fx, y: mag, color: "#1f5f99" }], { xlabel: "frequency (Hz)", ylabel: "|H| (dBΩ)", logx: true });
  $("bode-readout").textContent =
    `R_f   1e${2 + k} Ω\ncutoff ${cutoff_frequency(k)} Hz\n|H|dc ${top.toFixed(1)} dBΩ\n` +
    `phase at cutoff ${ph[fx.findIndex((v) => v >= cutoff_frequency(k))].toFixed(1)}°`;
}

function runSweep() {
  const out = $("snr-readout");
  try {
    const s = snr_sweep(num("sgain"), num("noise"), num("seed"));
    const i = Array.from(s.currents()), d = Array.from(s.snr_db());
    const series = [
      { x: i, y: d, color: "#2e7d32", dots: true },
      { x: [i[0], i[i.length - 1]], y: [6, 6], color: "#999" },
    ];
    plot($("snr"), series, { xlabel: "current (A rms)", ylabel: "SNR (dB)", logx: true });
    const lo = Number.isNaN(s.i_min()) ? "none" : (s.below_grid() ? "< " : "") + s.i_min().toExponential(3) + " A";
    out.textContent = `i_min ${lo}\ni_max ${s.i_max().toExponential(3)} A`;
    s.free();
  } catch (err) {
    out.textContent = String(err.message || err);
  }
}

await init();
for (const id of ["pr", "ps", "ec", "ratio", "clin"]) bind(id, (v) => v, drawLoop);
bind("gain", (v) => v, drawBode);
for (const id of ["sgain", "noise", "seed"]) bind(id, (v) => v, () => {});
$("run").addEventListener("click", runSweep);
drawLoop();
drawBode();
runSweep();
