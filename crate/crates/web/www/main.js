import init, { params, spectrum, witness } from "./pkg/cartcode_web.js";

const $ = (id) => document.getElementById(id);
const out = $("out");
const table = $("table");

function inputs() {
  return [$("field").value.trim(), $("sets").value.trim(), Number($("degree").value)];
}

function show(fn) {
  table.innerHTML = "";
  out.classList.remove("error");
  try {
    const value = JSON.parse(fn());
    out.textContent = JSON.stringify(value, null, 2);
    return value;
  } catch (e) {
    out.classList.add("error");
    out.textContent = String(e.message ?? e);
    return null;
  }
}

function spectrumTable(counts) {
  const rows = counts.map(([w, c]) => `<tr><td>${w}</td><td>${c}</td></tr>`).join("");
  table.innerHTML = `<table><tr><th>weight</th><th>count</th></tr>${rows}</table>`;
}

await init();
out.textContent = "ready";

$("params").onclick = () => show(() => params(...inputs()));
$("witness").onclick = () => show(() => witness(...inputs()));
$("spectrum").onclick = () => {
  const value = show(() => spectrum(...inputs(), Number($("budget").value)));
  if (value) spectrumTable(value.counts);
};
