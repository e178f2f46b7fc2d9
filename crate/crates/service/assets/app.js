"use strict";

const $ = (id) => document.getElementById(id);
let dataset = null;
let pending = null;
let timer = null;

function showErrors(lines) {
  const box = $("errors");
  box.hidden = lines.length === 0;
  box.textContent = lines.join("\n");
}

function checkbox(container, name, checked, onChange) {
  const label = document.createElement("label");
  const input = document.createElement("input");
  input.type = "checkbox";
  input.checked = checked;
  input.value = name;
  input.addEventListener("change", () => onChange(input));
  label.append(input, " " + name);
  container.append(label);
}

function buildControls() {
  for (const id of ["baselines", "labels", "sliders"]) $(id).replaceChildren();
  for (const solver of Object.keys(dataset.data)) {
    checkbox($("baselines"), solver, true, (input) => {
      const on = [...$("baselines").querySelectorAll("input:checked")];
      if (on.length === 0) input.checked = true;
      schedule();
    });
    for (const component of Object.keys(dataset.data[solver])) {
      const row = document.createElement("div");
      row.className = "slider";
      const name = document.createElement("span");
      name.textContent = solver + "/" + component;
      const range = document.createElement("input");
      range.type = "range";
      range.min = "0";
      range.max = "1";
      range.step = "0.01";
      range.value = "1";
      range.dataset.solver = solver;
      range.dataset.component = component;
      const value = document.createElement("span");
      value.textContent = "1";
      range.addEventListener("input", () => {
        value.textContent = range.value;
        schedule();
      });
      row.append(name, range, value);
      $("sliders").append(row);
    }
  }
  for (const label of dataset.labels) checkbox($("labels"), label, true, schedule);
  $("controls").hidden = false;
}

function currentConfig() {
  const config = {
    baselines: [...$("baselines").querySelectorAll("input:checked")].map((i) => i.value),
    drop_labels: [...$("labels").querySelectorAll("input:not(:checked)")].map((i) => i.value),
    scale_factors: {},
    tau_min: Number($("tau-min").value),
    tau_max: Number($("tau-max").value),
    x_scale: $("x-scale").value,
    min_baseline_threshold: Number($("min-baseline").value) || 0,
  };
  for (const range of $("sliders").querySelectorAll("input")) {
    if (range.value === "1") continue;
    const s = range.dataset.solver;
    (config.scale_factors[s] ??= {})[range.dataset.component] = Number(range.value);
  }
  if ($("unsolved").value !== "") config.unsolved_threshold = Number($("unsolved").value);
  return config;
}

function smallestPositiveBreakpoint(doc) {
  let best = Infinity;
  for (const curve of Object.values(doc.curves)) {
    for (const t of curve.tau) if (t > 0 && t < best) best = t;
  }
  return Number.isFinite(best) ? best : 1;
}

function quote(s) {
  return /^[A-Za-z0-9_.\/=-]+$/.test(s) ? s : "'" + s.replace(/'/g, "'\\''") + "'";
}

function commandLine(config) {
  const args = ["perfprof", "profile", "-i", "results.json", "--format", "svg"];
  if (config.baselines.length !== Object.keys(dataset.data).length) {
    for (const b of config.baselines) args.push("--baseline", quote(b));
  }
  for (const l of config.drop_labels) args.push("--drop-label", quote(l));
  for (const [s, comps] of Object.entries(config.scale_factors)) {
    for (const [c, f] of Object.entries(comps)) args.push("--scale", quote(`${s}/${c}=${f}`));
  }
  if (config.tau_min !== 0) args.push("--tau-min", String(config.tau_min));
  if (config.tau_max !== 2) args.push("--tau-max", String(config.tau_max));
  if (config.x_scale !== "linear") args.push("--x-scale", config.x_scale);
  if (config.min_baseline_threshold) args.push("--min-baseline", String(config.min_baseline_threshold));
  if (config.unsolved_threshold !== undefined) args.push("--unsolved", String(config.unsolved_threshold));
  return args.join(" ");
}

async function post(config, format, signal) {
  const response = await fetch("api/profile", {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify({ dataset, config, response_format: format }),
    signal,
  });
  if (!response.ok) {
    const body = await response.json().catch(() => ({}));
    const lines = body.errors ? body.errors.map((e) => `${e.path}: ${e.message}`) : [body.error || response.statusText];
    throw new Error(lines.join("\n"));
  }
  return response;
}

async function recompute() {
  if (!dataset) return;
  if (pending) pending.abort();
  pending = new AbortController();
  const config = currentConfig();
  $("notice").textContent = "";
  try {
    if (config.x_scale === "logarithmic" && !(config.tau_min > 0)) {
      const doc = await (await post({ ...config, x_scale: "linear", tau_min: 0 }, "json", pending.signal)).json();
      config.tau_min = smallestPositiveBreakpoint(doc);
      $("tau-min").value = String(config.tau_min);
      $("notice").textContent = `τ min raised to ${config.tau_min} for the logarithmic axis.`;
    }
    const response = await post(config, "svg", pending.signal);
    const svg = await response.text();
    $("plot").innerHTML = svg;
    $("meta").textContent =
      `instances: ${response.headers.get("x-profile-denominator")}, ` +
      `excluded (no baseline solved): ${response.headers.get("x-profile-excluded-no-baseline")}, ` +
      `max ratio: ${response.headers.get("x-profile-max-ratio")}`;
    $("command").textContent = commandLine(config);
    showErrors([]);
  } catch (e) {
    if (e.name !== "AbortError") showErrors([e.message]);
  }
}

function schedule() {
  clearTimeout(timer);
  timer = setTimeout(recompute, 150);
}

async function download(format) {
  const response = await post(currentConfig(), format);
  const blob = await response.blob();
  const a = document.createElement("a");
  a.href = URL.createObjectURL(blob);
  a.download = "profile." + format;
  a.click();
  URL.revokeObjectURL(a.href);
}

$("file").addEventListener("change", async (event) => {
  const file = event.target.files[0];
  if (!file) return;
  try {
    dataset = JSON.parse(await file.text());
  } catch (e) {
    dataset = null;
    showErrors(["could not parse file: " + e.message]);
    return;
  }
  buildControls();
  recompute();
});
for (const id of ["tau-min", "tau-max", "x-scale", "min-baseline", "unsolved"]) {
  $(id).addEventListener("change", schedule);
}
$("export-svg").addEventListener("click", () => download("svg").catch((e) => showErrors([e.message])));
$("export-html").addEventListener("click", () => download("html").catch((e) => showErrors([e.message])));
