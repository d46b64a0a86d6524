import init, {
  husimi_grid,
  harmonic_grid,
  kravchuk_functions,
  kravchuk_grid,
  kravchuk_spectrum,
} from "./pkg/monopole_cs_wasm.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);

function report(target, f) {
  try {
    $("err").textContent = "";
    f();
  } catch (e) {
    $("err").textContent = String(e);
    $(target).textContent = "";
  }
}

// Husimi view

let z0 = { re: 0.5, im: -0.5 };

function drawHusimi() {
  report("h-info", () => {
    const canvas = $("h-canvas");
    const res = canvas.width;
    const hw = num("h-hw");
    const d = husimi_grid(num("h-two-nu"), num("h-m"), $("h-state").value, num("h-j"), z0.re, z0.im, hw, res);
    const ctx = canvas.getContext("2d");
    const img = ctx.createImageData(res, res);
    let max = 0;
    for (const v of d) max = Math.max(max, v);
    for (let i = 0; i < d.length; i++) {
      // grid rows run from -hw upwards; canvas rows run downwards
      const row = res - 1 - Math.floor(i / res);
      const o = 4 * (row * res + (i % res));
      const t = max > 0 ? d[i] / max : 0;
      img.data[o] = 255 * Math.min(1, 1.6 * t);
      img.data[o + 1] = 255 * Math.max(0, 1.6 * t - 0.6);
      img.data[o + 2] = 255 * (0.25 + 0.5 * t) * (1 - t);
      img.data[o + 3] = 255;
    }
    ctx.putImageData(img, 0, 0);
    const label = $("h-state").value === "gscs" ? `z₀ = ${z0.re.toFixed(2)} ${z0.im < 0 ? "−" : "+"} ${Math.abs(z0.im).toFixed(2)}i, ` : "";
    $("h-info").textContent = `${label}max density ${max.toFixed(6)}`;
  });
}

$("h-canvas").addEventListener("click", (ev) => {
  const r = ev.target.getBoundingClientRect();
  const hw = num("h-hw");
  z0 = {
    re: -hw + (2 * hw * (ev.clientX - r.left)) / r.width,
    im: hw - (2 * hw * (ev.clientY - r.top)) / r.height,
  };
  $("h-state").value = "gscs";
  drawHusimi();
});

// Harmonic view

function hsv(h, v) {
  const f = (n) => {
    const k = (n + h * 6) % 6;
    return v * (1 - Math.max(0, Math.min(k, 4 - k, 1)));
  };
  return [255 * f(5), 255 * f(3), 255 * f(1)];
}

function drawHarmonic() {
  report("y-info", () => {
    const canvas = $("y-canvas");
    const res = canvas.width;
    const v = harmonic_grid(num("y-two-nu"), num("y-m"), num("y-j"), num("y-hw"), res);
    const ctx = canvas.getContext("2d");
    const img = ctx.createImageData(res, res);
    let max = 0;
    for (let i = 0; i < v.length; i += 2) max = Math.max(max, v[i]);
    for (let i = 0; i < res * res; i++) {
      const row = res - 1 - Math.floor(i / res);
      const o = 4 * (row * res + (i % res));
      const hue = (v[2 * i + 1] / (2 * Math.PI) + 1) % 1;
      const [r, g, b] = hsv(hue, max > 0 ? Math.sqrt(v[2 * i] / max) : 0);
      img.data[o] = r;
      img.data[o + 1] = g;
      img.data[o + 2] = b;
      img.data[o + 3] = 255;
    }
    ctx.putImageData(img, 0, 0);
    $("y-info").textContent = `max |Φ̃| on the grid ${max.toFixed(6)}`;
  });
}

// Kravchuk view

let kravchuk = null;

function loadKravchuk() {
  report("k-info", () => {
    const n = num("k-n");
    const p = $("k-p").value.trim();
    kravchuk = {
      n,
      table: kravchuk_functions(n, p),
      grid: kravchuk_grid(n, p),
      spectrum: kravchuk_spectrum(n, p),
    };
    $("k-k").max = n;
    if (num("k-k") > n) $("k-k").value = n;
    drawKravchuk();
  });
}

function drawKravchuk() {
  if (!kravchuk) return;
  const { n, table, grid, spectrum } = kravchuk;
  const k = num("k-k");
  const canvas = $("k-canvas");
  const ctx = canvas.getContext("2d");
  const w = canvas.width;
  const h = canvas.height;
  ctx.clearRect(0, 0, w, h);
  const row = table.slice(k * (n + 1), (k + 1) * (n + 1));
  let amp = 0;
  for (const v of row) amp = Math.max(amp, Math.abs(v));
  const xs = (x) => 20 + ((x - grid[0]) / (grid[n] - grid[0] || 1)) * (w - 40);
  const ys = (y) => h / 2 - (y / (amp || 1)) * (h / 2 - 15);
  ctx.strokeStyle = "#bbb";
  ctx.beginPath();
  ctx.moveTo(0, h / 2);
  ctx.lineTo(w, h / 2);
  ctx.stroke();
  ctx.strokeStyle = "#2a5db0";
  ctx.fillStyle = "#2a5db0";
  for (let j = 0; j <= n; j++) {
    ctx.beginPath();
    ctx.moveTo(xs(grid[j]), h / 2);
    ctx.lineTo(xs(grid[j]), ys(row[j]));
    ctx.stroke();
    ctx.beginPath();
    ctx.arc(xs(grid[j]), ys(row[j]), 2.5, 0, 2 * Math.PI);
    ctx.fill();
  }
  let norm = 0;
  for (const v of row) norm += v * v;
  $("k-k-label").textContent = `k = ${k}`;
  $("k-info").textContent =
    `Σ_j φ_k(x_j)² = ${norm.toFixed(12)}; eigenvalue ${spectrum[k].toFixed(12)} (k + 1/2 = ${k + 0.5})`;
}

await init();
for (const id of ["h-two-nu", "h-m", "h-state", "h-j", "h-hw"]) $(id).addEventListener("input", drawHusimi);
for (const id of ["y-two-nu", "y-m", "y-j", "y-hw"]) $(id).addEventListener("input", drawHarmonic);
for (const id of ["k-n", "k-p"]) $(id).addEventListener("change", loadKravchuk);
$("k-k").addEventListener("input", drawKravchuk);
drawHusimi();
drawHarmonic();
loadKravchuk();
