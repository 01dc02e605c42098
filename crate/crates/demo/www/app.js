import init, { radonPartition, hellyCheck, certificate2d } from "./pkg/mixhelly_demo.js";

function show(out, f, input) {
  try {
    out.textContent = JSON.stringify(JSON.parse(f(input)), null, 2);
  } catch (e) {
    out.textContent = "error: " + e;
  }
}

await init();

const $ = (id) => document.getElementById(id);
$("radon").onclick = () => show($("points-out"), radonPartition, $("points").value);
$("helly").onclick = () => show($("points-out"), hellyCheck, $("points").value);
$("certify").onclick = () => show($("system-out"), certificate2d, $("system").value);
