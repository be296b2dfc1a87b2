import init, { knotNames, signaturePlot, coneGrid, base4 } from "./pkg/slicekit_web.js";

const $ = (id) => document.getElementById(id);

function call(f, ...args) {
  try {
    return { ok: JSON.parse(f(...args)) };
  } catch (e) {
    return { err: String(e) };
  }
}

function showError(pre, msg) {
  pre.textContent = msg;
  pre.className = "error";
}

// Signature values map to a diverging palette: negative blue, zero grey, positive red.
function valueColour(v, maxAbs) {
  if (v === 0) return "#999";
  const t = Math.min(1, Math.abs(v) / Math.max(2, maxAbs));
  const light = Math.round(75 - 40 * t);
  return v > 0 ? `hsl(0 70% ${light}%)` : `hsl(220 70% ${light}%)`;
}

function drawSignature(plot) {
  const c = $("tl-canvas");
  const g = c.getContext("2d");
  const cx = c.width / 2, cy = c.height / 2, r = c.width * 0.38;
  g.clearRect(0, 0, c.width, c.height);
  g.strokeStyle = "#eee";
  g.lineWidth = 1;
  g.beginPath(); g.moveTo(cx - r - 20, cy); g.lineTo(cx + r + 20, cy); g.stroke();
  g.beginPath(); g.moveTo(cx, cy - r - 20); g.lineTo(cx, cy + r + 20); g.stroke();
  const maxAbs = Math.max(...plot.arcs.map((a) => Math.abs(a.value)), 0);
  const rad = (d) => (d * Math.PI) / 180;
  g.lineWidth = 10;
  g.lineCap = "butt";
  for (const a of plot.arcs) {
    g.strokeStyle = valueColour(a.value, maxAbs);
    // Upper half is ξ = e^{iθ}; the lower half is its conjugate with equal signature.
    g.beginPath(); g.arc(cx, cy, r, -rad(a.to_deg), -rad(a.from_deg)); g.stroke();
    g.beginPath(); g.arc(cx, cy, r, rad(a.from_deg), rad(a.to_deg)); g.stroke();
    const mid = rad((a.from_deg + a.to_deg) / 2);
    g.fillStyle = "#222";
    g.font = "13px sans-serif";
    g.textAlign = "center";
    g.textBaseline = "middle";
    g.fillText(String(a.value), cx + (r + 24) * Math.cos(mid), cy - (r + 24) * Math.sin(mid));
  }
  g.fillStyle = "#000";
  for (const j of plot.jumps) {
    const t = rad((j.deg_lo + j.deg_hi) / 2);
    for (const s of [1, -1]) {
      g.beginPath();
      g.arc(cx + r * Math.cos(t), cy - s * r * Math.sin(t), 4 + j.multiplicity, 0, 2 * Math.PI);
      g.fill();
    }
  }
  g.font = "12px sans-serif";
  g.fillText("1", cx + r + 12, cy + 12);
  g.fillText("−1", cx - r - 14, cy + 12);
}

function runSignature() {
  const code = $("tl-code").value.trim();
  const spec = code || $("tl-knot").value;
  const out = $("tl-out");
  const res = call(signaturePlot, spec);
  if (res.err) return showError(out, res.err);
  const p = res.ok;
  out.className = "";
  const arcs = p.arcs
    .map((a) => `  θ ∈ (${a.from_deg.toFixed(2)}°, ${a.to_deg.toFixed(2)}°)  z ∈ (${a.z_lo}, ${a.z_hi}): σ = ${a.value}`)
    .join("\n");
  const jumps = p.jumps
    .map((j) => `  θ ≈ ${((j.deg_lo + j.deg_hi) / 2).toFixed(3)}°  multiplicity ${j.multiplicity}`)
    .join("\n");
  out.textContent =
    `${p.name} (${p.crossings} crossings)\nΔ = ${p.alexander}\nσ = ${p.signature}\n\narcs:\n${arcs}\n\nroots of Δ on the circle:\n${jumps || "  none"}`;
  drawSignature(p);
}

function drawCone(grid) {
  const c = $("cone-canvas");
  const g = c.getContext("2d");
  g.clearRect(0, 0, c.width, c.height);
  const cell = Math.max(1, Math.floor(Math.min(c.width / grid.cols, c.height / grid.rows)));
  const sub = new Set(grid.largest_subgroup.map((x) => x.join(",")));
  for (let i = 0; i < grid.rows; i++) {
    for (let j = 0; j < grid.cols; j++) {
      const q = grid.cells[i][j];
      const key = grid.cols === 1 ? `${i}` : `${i},${j}`;
      if (q.in_cone) {
        g.fillStyle = sub.has(key) ? "#c0392b" : "#e59866";
      } else {
        const shade = 235 - Math.round((q.q / grid.exponent) * 120);
        g.fillStyle = `rgb(${shade},${shade},${shade + 10})`;
      }
      g.fillRect(j * cell, i * cell, cell, cell);
    }
  }
  if (cell >= 6) {
    g.strokeStyle = "rgba(255,255,255,.6)";
    g.lineWidth = 1;
    for (let i = 0; i <= grid.rows; i++) { g.beginPath(); g.moveTo(0, i * cell); g.lineTo(grid.cols * cell, i * cell); g.stroke(); }
    for (let j = 0; j <= grid.cols; j++) { g.beginPath(); g.moveTo(j * cell, 0); g.lineTo(j * cell, grid.rows * cell); g.stroke(); }
  }
}

function runCone() {
  const out = $("cone-out");
  const res = call(coneGrid, $("cone-form").value);
  if (res.err) return showError(out, res.err);
  const g = res.ok;
  out.className = "";
  const met = g.metabolizer
    ? `order ${g.metabolizer.order}, generators ${JSON.stringify(g.metabolizer.generators)}`
    : "none";
  out.textContent =
    `${g.form}\n|H| = ${g.rows * g.cols}\n|Λ₀| = ${g.cone_size}\n` +
    `largest subgroup inside Λ₀: order ${g.largest_subgroup.length}\n` +
    `case: ${g.theorem1_case}\nmetabolizer: ${met}\n\n` +
    `dark red: largest subgroup in the cone\norange: other cone elements\ngrey: λ(x,x) ≠ 0 (darker = larger numerator)`;
  drawCone(g);
}

function runBase4() {
  const out = $("b4-out");
  const res = call(base4, Number($("b4-d").value));
  if (res.err) return showError(out, res.err);
  const r = res.ok;
  out.className = "";
  const conway = r.conway.map((c, k) => `${c}·z^${2 * k}`).join(" + ");
  out.textContent =
    `d = ${r.d}\nConway: ${conway}\nΔ = ${r.alexander}\nΔ(1) = ${r.at_one}\nΔ(−1) = ${r.at_minus_one}\n` +
    `roots on the unit circle: ${r.has_unit_circle_roots ? "yes" : "no"}`;
}

async function main() {
  await init();
  const select = $("tl-knot");
  for (const name of JSON.parse(knotNames())) {
    const opt = document.createElement("option");
    opt.textContent = name;
    select.appendChild(opt);
  }
  select.value = "3_1";
  $("tl-go").onclick = runSignature;
  select.onchange = () => { $("tl-code").value = ""; runSignature(); };
  $("cone-go").onclick = runCone;
  $("cone-preset").onchange = (e) => {
    if (e.target.value) { $("cone-form").value = e.target.value; runCone(); }
  };
  $("b4-go").onclick = runBase4;
  $("status").textContent = "";
  runSignature();
  runCone();
  runBase4();
}

main().catch((e) => { $("status").textContent = `Failed to load: ${e}`; $("status").className = "error"; });
