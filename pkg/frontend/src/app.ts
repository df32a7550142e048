/**
 * Minimal DOM wiring of the three loops: the live editor, the map zone
 * query, and the moderation queue. Serve `index.html` next to the
 * compiled `dist/` with the service reachable on the same origin or on
 * the URL given in the `data-service` attribute of <body>.
 */

import { ApiClient, Diagnostic } from "./api.js";
import { EditorController } from "./editor.js";
import { ModerationController } from "./moderation.js";
import { ZoneController } from "./zone.js";
import { fitViewBox, polygonPath, verticesPath } from "./map.js";

export function startApp(root: Document): void {
  const base = root.body.dataset.service ?? "";
  const api = new ApiClient(base);
  wireEditor(root, api);
  wireZone(root, api);
  wireModeration(root, api);
}

function wireEditor(root: Document, api: ApiClient): void {
  const textarea = root.querySelector<HTMLTextAreaElement>("#draft");
  const output = root.querySelector<HTMLElement>("#diagnostics");
  const banner = root.querySelector<HTMLElement>("#offline");
  if (!textarea || !output || !banner) return;
  const editor = new EditorController(api, {
    onChange: (state) => {
      banner.hidden = !state.offline;
      output.replaceChildren(...state.diagnostics.map((d) => diagnosticRow(root, d, editor)));
    },
  });
  textarea.addEventListener("input", () => editor.setDraft(textarea.value));
  root.defaultView?.addEventListener("inaut:apply-hint", ((event: Event) => {
    const custom = event as CustomEvent<{ draft: string }>;
    textarea.value = custom.detail.draft;
  }) as EventListener);
}

function diagnosticRow(root: Document, diagnostic: Diagnostic, editor: EditorController): HTMLElement {
  const row = root.createElement("div");
  row.className = `diagnostic ${diagnostic.severity}`;
  row.textContent = `${diagnostic.code} [${diagnostic.span[0]}-${diagnostic.span[1]}]: ${diagnostic.message} `;
  for (const hint of diagnostic.hints) {
    const button = root.createElement("button");
    button.textContent = hint;
    button.addEventListener("click", () => {
      editor.applyHint(diagnostic, hint);
      const draft = editor.getState().draft;
      root.defaultView?.dispatchEvent(
        new CustomEvent("inaut:apply-hint", { detail: { draft } }));
    });
    row.appendChild(button);
  }
  return row;
}

function wireZone(root: Document, api: ApiClient): void {
  const svg = root.querySelector<SVGSVGElement>("#map");
  const sectionsBox = root.querySelector<HTMLElement>("#sections");
  const submit = root.querySelector<HTMLButtonElement>("#zone-submit");
  const clear = root.querySelector<HTMLButtonElement>("#zone-clear");
  if (!svg || !sectionsBox || !submit || !clear) return;
  const zone = new ZoneController(api);

  svg.addEventListener("click", (event) => {
    const rect = svg.getBoundingClientRect();
    const view = svg.viewBox.baseVal;
    const lon = view.x + ((event.clientX - rect.left) / rect.width) * view.width;
    const lat = -(view.y + ((event.clientY - rect.top) / rect.height) * view.height);
    zone.addVertex(lon, lat);
    drawZone(root, svg, zone);
  });
  clear.addEventListener("click", () => {
    zone.reset();
    drawZone(root, svg, zone);
    sectionsBox.replaceChildren();
  });
  submit.addEventListener("click", async () => {
    const state = await zone.submit();
    sectionsBox.replaceChildren();
    if (state.error) {
      const p = root.createElement("p");
      p.className = "error";
      p.textContent = state.error;
      sectionsBox.appendChild(p);
      return;
    }
    const polygons = state.sections
      .flatMap((s) => s.entity_links)
      .flatMap((l) => (l.polygon ? [l.polygon] : []));
    if (polygons.length > 0) {
      const box = fitViewBox(polygons);
      svg.setAttribute("viewBox", `${box.x} ${box.y} ${box.width} ${box.height}`);
    }
    for (const section of state.sections) {
      const heading = root.createElement("h3");
      heading.textContent = section.tag;
      const body = root.createElement("p");
      body.textContent = section.litinaut_text;
      sectionsBox.append(heading, body);
      for (const link of section.entity_links) {
        const anchor = root.createElement("a");
        anchor.textContent = link.name;
        anchor.addEventListener("mouseenter", () => {
          const polygon = zone.highlightPolygon(link.instance_id);
          if (polygon) highlight(root, svg, polygonPath(polygon));
        });
        sectionsBox.appendChild(anchor);
      }
    }
  });
}

function drawZone(root: Document, svg: SVGSVGElement, zone: ZoneController): void {
  let path = svg.querySelector<SVGPathElement>("#zone-path");
  if (!path) {
    path = root.createElementNS("http://www.w3.org/2000/svg", "path");
    path.id = "zone-path";
    svg.appendChild(path);
  }
  path.setAttribute("d", verticesPath(zone.getState().vertices));
}

function highlight(root: Document, svg: SVGSVGElement, d: string): void {
  let path = svg.querySelector<SVGPathElement>("#highlight-path");
  if (!path) {
    path = root.createElementNS("http://www.w3.org/2000/svg", "path");
    path.id = "highlight-path";
    path.setAttribute("class", "highlight");
    svg.appendChild(path);
  }
  path.setAttribute("d", d);
}

function wireModeration(root: Document, api: ApiClient): void {
  const queueBox = root.querySelector<HTMLElement>("#queue");
  const tokenInput = root.querySelector<HTMLInputElement>("#token");
  const reload = root.querySelector<HTMLButtonElement>("#queue-reload");
  if (!queueBox || !tokenInput || !reload) return;
  const moderation = new ModerationController(api);

  const render = (): void => {
    const state = moderation.getState();
    queueBox.replaceChildren();
    if (state.accessDenied) {
      const p = root.createElement("p");
      p.className = "error";
      p.textContent = "access denied: a moderator token is required";
      queueBox.appendChild(p);
      return;
    }
    if (state.toast) {
      const p = root.createElement("p");
      p.className = "toast";
      p.textContent = state.toast;
      queueBox.appendChild(p);
    }
    if (state.items.length === 0) {
      const p = root.createElement("p");
      p.textContent = "nothing waiting for review";
      queueBox.appendChild(p);
    }
    for (const item of state.items) {
      const row = root.createElement("div");
      row.className = "pending";
      const preview = root.createElement("p");
      preview.textContent = `${item.contribution.author}: ${item.contribution.segment}`;
      row.appendChild(preview);
      for (const decision of ["approve", "reject"] as const) {
        const button = root.createElement("button");
        button.textContent = decision;
        button.addEventListener("click", async () => {
          await moderation.decide(item.contribution.id, decision);
          render();
        });
        row.appendChild(button);
      }
      queueBox.appendChild(row);
    }
  };

  reload.addEventListener("click", async () => {
    api.setToken(tokenInput.value || null);
    await moderation.load();
    render();
  });
}
