import init, { inscribedLengths, feasibility, motionSvg, placements } from "./pkg/trilinea_wasm.js";

const $ = (id) => document.getElementById(id);
const num = (id) => parseFloat($(id).value);

function lines() {
  const out = [];
  for (const id of ["a1", "a2", "a3"]) {
    const a = (num(id) * Math.PI) / 180;
    out.push(0, 0, Math.cos(a), Math.sin(a));
  }
  return new Float64Array(out);
}

function show(el, f) {
  try {
    f();
    el.classList.remove("error");
  } catch (e) {
    el.classList.add("error");
    el.textContent = String(e.message ?? e);
  }
}

function drawMotion() {
  const angles = new Float64Array(["a1", "a2", "a3"].map(num));
  const lengths = inscribedLengths(angles, num("radius"));
  show($("motion"), () => {
    $("report").textContent = JSON.stringify(JSON.parse(feasibility(lines(), lengths)), null, 1);
    $("motion").innerHTML = motionSvg(lines(), lengths, 256, num("theta"), $("rolling").checked);
  });
}

function drawPlacements() {
  const lengths = new Float64Array(["d12", "d13", "d23"].map(num));
  show($("placements"), () => {
    const r = JSON.parse(placements(lines(), lengths));
    $("count").textContent = r.count === "continuum" ? "a continuous family (the triangle moves)" : `${r.count} placement(s)`;
    $("placements").innerHTML = r.svg;
  });
}

function refresh() {
  for (const o of document.querySelectorAll("output")) o.textContent = $(o.htmlFor).value;
  drawMotion();
  drawPlacements();
}

function tick() {
  if ($("play").checked) {
    $("theta").value = ((num("theta") + 0.02) % (2 * Math.PI)).toFixed(3);
    $("theta").nextElementSibling.textContent = $("theta").value;
    drawMotion();
  }
  requestAnimationFrame(tick);
}

await init();
for (const el of document.querySelectorAll("input")) el.addEventListener("input", refresh);
refresh();
tick();
