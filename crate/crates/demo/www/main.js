// Built with: wasm-bindgen --target web --out-dir www/pkg <amorphic_demo.wasm>
import init, { construct_summary, character_spectrum, fusion_certificate } from "./pkg/amorphic_demo.js";

const presets = {
  four_class: { name: "four_class", ell: 2 },
  lifted_four_class: { name: "lifted_four_class", ell: 2 },
  rotation: { name: "rotation", q: 3, ell: 2 },
  chain: { name: "chain", q: 2, m: 2, ell: 2, chain: [2, 1], form: "hyperbolic" },
  cyclotomic: { name: "cyclotomic", p: 2, s: 4, e: 5 },
};

const $ = (id) => document.getElementById(id);
const out = $("out");
const status = $("status");

function request() {
  return $("request").value;
}

function run(label, f) {
  status.textContent = label + "…";
  // let the status paint before the synchronous call blocks
  setTimeout(() => {
    const t0 = performance.now();
    try {
      f();
      status.textContent = `${label}: ${((performance.now() - t0) / 1000).toFixed(2)} s`;
    } catch (e) {
      status.textContent = "";
      out.innerHTML = `<p class="fail">${e.message ?? e}</p>`;
    }
  }, 10);
}

function table(head, rows) {
  const th = head.map((h) => `<th>${h}</th>`).join("");
  const tr = rows.map((r) => `<tr>${r.map((c) => `<td>${c ?? "–"}</td>`).join("")}</tr>`).join("");
  return `<table><tr>${th}</tr>${tr}</table>`;
}

function showSummary() {
  const s = JSON.parse(construct_summary(request()));
  const rows = s.classes.map((c, i) => [i + 1, c.size, c.params, c.latin]);
  out.innerHTML =
    `<p>${s.construction} on Z${s.group.join(" x Z")} (order ${s.order})</p>` +
    s.warnings.map((w) => `<p class="fail">${w}</p>`).join("") +
    table(["class", "size", "(v,k,λ,μ)", "type"], rows);
}

function drawHistogram(hist) {
  const canvas = $("chart");
  const ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  const entries = Object.entries(hist).sort((a, b) => Number(a[0]) - Number(b[0]));
  const max = Math.max(...entries.map((e) => e[1]));
  const pad = 30;
  const w = (canvas.width - 2 * pad) / entries.length;
  ctx.font = "12px system-ui";
  ctx.textAlign = "center";
  entries.forEach(([value, count], i) => {
    const h = ((canvas.height - 2 * pad) * count) / max;
    const x = pad + i * w;
    ctx.fillStyle = "#4a7ab5";
    ctx.fillRect(x + w * 0.15, canvas.height - pad - h, w * 0.7, h);
    ctx.fillStyle = "#222";
    ctx.fillText(value, x + w / 2, canvas.height - pad + 14);
    ctx.fillText(String(count), x + w / 2, canvas.height - pad - h - 4);
  });
}

function showSpectrum() {
  const s = JSON.parse(character_spectrum(request(), Number($("class").value)));
  drawHistogram(s.histogram);
  const values = Object.keys(s.histogram).join(", ");
  out.innerHTML = `<p>class ${s.class} (size ${s.size}): nonprincipal character sums ${values}` +
    (s.integral ? "" : " (not all integral)") + "</p>";
}

function showFusions() {
  const c = JSON.parse(fusion_certificate(request()));
  const verdict = c.amorphic ? "amorphic" : `<span class="fail">not amorphic</span>`;
  const rows = c.fusions.map((f) => [f.partition, f.ok ? "ok" : `<span class="fail">${f.witness}</span>`]);
  out.innerHTML = `<p>${c.passed}/${c.checked} fusions are schemes: ${verdict}</p>` +
    table(["fusion", "result"], rows);
}

function setPreset() {
  $("request").value = JSON.stringify(presets[$("family").value]);
}

await init();
setPreset();
status.textContent = "ready";
$("family").addEventListener("change", setPreset);
$("build").addEventListener("click", () => run("summary", showSummary));
$("spectrum").addEventListener("click", () => run("spectrum", showSpectrum));
$("fusions").addEventListener("click", () => run("fusions", showFusions));
