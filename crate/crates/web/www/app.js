import init, { fixture, classify, rees, free_classes } from "./pkg/semicomm_web.js";

await init();

const $ = (id) => document.getElementById(id);

function esc(s) {
  return String(s).replace(/[&<>]/g, (c) => ({ "&": "&amp;", "<": "&lt;", ">": "&gt;" })[c]);
}

function run(out, f) {
  try {
    $(out).innerHTML = f();
  } catch (e) {
    $(out).innerHTML = `<p class="err">${esc(e)}</p>`;
  }
}

function cls(c) {
  if (c === null) return "none";
  if (typeof c === "number") return c;
  if ("lower" in c) return c.lower === c.upper ? c.lower : `${c.lower}..${c.upper}`;
  return `unknown beyond arity ${c.unknown_beyond_arity}`;
}

function yn(b) {
  return b === null ? "unknown" : b ? "yes" : "no";
}

function report(r) {
  const rows = [
    ["solvable", r.solvable, r.solvable_class],
    ["left nilpotent", r.left_nilpotent, r.left_nilpotent_class],
    ["right nilpotent", r.right_nilpotent, r.right_nilpotent_class],
    ["supernilpotent", r.supernilpotent === "unknown" ? null : r.supernilpotent === "yes", r.supernilpotent_class],
  ];
  let html = `<table class="report"><tr><th colspan="3">${r.method}</th></tr>`;
  for (const [name, v, c] of rows) html += `<tr><td>${name}</td><td>${yn(v)}</td><td>${esc(cls(c))}</td></tr>`;
  html += `<tr><td>abelian</td><td>${yn(r.abelian)}</td><td></td></tr></table>`;
  return html + r.notes.map((n) => `<p>${esc(n)}</p>`).join("");
}

$("fixture").addEventListener("change", () => {
  const name = $("fixture").value;
  if (name) $("table").value = fixture(name);
});

$("classify-go").addEventListener("click", () =>
  run("classify-out", () => {
    const v = JSON.parse(classify($("table").value, Number($("arity").value)));
    return `<p>[1,1] = <code>${esc(JSON.stringify(v.commutator))}</code>, kernel <code>${esc(JSON.stringify(v.kernel))}</code></p>` +
      report(v.definitional) + report(v.structural);
  }));

$("rees-go").addEventListener("click", () =>
  run("rees-out", () => {
    const v = JSON.parse(rees($("rees-group").value, Number($("rees-i").value), Number($("rees-l").value), $("rees-p").value));
    const coords = v.coords.map((c, x) => `${x} = (${c.i}, ${c.g}, ${c.lambda})`).join("\n");
    return `<pre>${esc(v.table)}</pre><pre>${esc(coords)}</pre>` +
      `<p>Recovered sandwich <code>${esc(JSON.stringify(v.decomposition.sandwich))}</code> over a group of order ${v.group_table.length}</p>` +
      report(v.structural);
  }));

$("free-go").addEventListener("click", () =>
  run("free-out", () => {
    const v = JSON.parse(free_classes(Number($("free-sigma").value), Number($("free-n").value), Number($("free-len").value), $("free-word").value));
    let html = "";
    if (v.query) {
      html += `<p>Class of <code>${esc(v.query.word)}</code>: ${v.query.class.map((w) => `<code>${esc(w)}</code>`).join(" ")}</p>`;
    }
    html += `<p>${v.class_count} classes in total</p><pre>`;
    for (const s of v.strata) html += `${s.length}\t${s.class_count}\t${esc(s.normal_forms.join(" "))}\n`;
    return html + "</pre>";
  }));
