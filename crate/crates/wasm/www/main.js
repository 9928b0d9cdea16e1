import init, { analyze_post, aggregate, tfn_conformity } from "./pkg/topic_sentiment_wasm.js";

const $ = (id) => document.getElementById(id);
const numbers = (s) => s.split(",").map((x) => x.trim()).filter((x) => x !== "").map(Number);

function show(out, svg, run) {
  try {
    const r = JSON.parse(run());
    if (svg) {
      $(svg).innerHTML = r.svg;
      delete r.svg;
    }
    $(out).className = "";
    $(out).textContent = JSON.stringify(r, null, 2);
  } catch (e) {
    $(out).className = "error";
    $(out).textContent = String(e);
    if (svg) $(svg).innerHTML = "";
  }
}

function runAnalyze() {
  show("post-out", null, () => analyze_post($("post").value));
}

function runAggregate() {
  show("agg-out", "agg-svg", () =>
    aggregate(
      new Float64Array(numbers($("pol").value)),
      new Float64Array(numbers($("wts").value)),
      Number($("scale").value),
      Number($("ramp").value),
    ),
  );
}

function runTfn() {
  const [a, m, b] = ["ta", "tm", "tb"].map((id) => Number($(id).value));
  show("tfn-out", "tfn-svg", () => tfn_conformity(a, m, b, Number($("ramp").value)));
}

await init();
$("analyze").addEventListener("click", runAnalyze);
$("aggregate").addEventListener("click", runAggregate);
for (const id of ["ta", "tm", "tb"]) $(id).addEventListener("input", runTfn);
runAnalyze();
runAggregate();
runTfn();
