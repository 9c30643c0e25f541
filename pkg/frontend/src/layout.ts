import type { PGraphJson } from "./types";

/**
 * Layered drawing of an importance graph.
 *
 * Edges run from more important to less important attributes, so the layer
 * of a node is the length of the longest edge path reaching it: sources
 * (nothing outranks them) sit in layer 0 at the top.  Within a layer, nodes
 * are ordered by the mean position of their parents in the layer above
 * (one barycenter pass), which keeps the tiny graphs we draw mostly
 * crossing-free without a full Sugiyama implementation.
 */

export interface NodePosition {
  name: string;
  layer: number;
  x: number;
  y: number;
}

export interface GraphLayout {
  layers: string[][];
  positions: Record<string, NodePosition>;
  width: number;
  height: number;
}

export function layerAssignment(g: PGraphJson): Map<string, number> {
  const layer = new Map<string, number>();
  for (const n of g.nodes) layer.set(n, 0);
  // longest-path relaxation; the graph is transitive and tiny, so a fixed
  // point arrives after at most |nodes| sweeps
  for (let pass = 0; pass < g.nodes.length; pass += 1) {
    let changed = false;
    for (const [from, to] of g.edges) {
      const want = (layer.get(from) ?? 0) + 1;
      if ((layer.get(to) ?? 0) < want) {
        layer.set(to, want);
        changed = true;
      }
    }
    if (!changed) break;
  }
  return layer;
}

const X_GAP = 110;
const Y_GAP = 90;
const MARGIN = 50;

export function layeredLayout(g: PGraphJson): GraphLayout {
  const layerIndex = layerAssignment(g);
  const depth = Math.max(0, ...layerIndex.values());
  const layers: string[][] = Array.from({ length: depth + 1 }, () => []);
  for (const n of g.nodes) layers[layerIndex.get(n) ?? 0].push(n);

  const parents = new Map<string, string[]>();
  for (const [from, to] of g.edges) {
    parents.set(to, [...(parents.get(to) ?? []), from]);
  }

  // order each layer under the one above it
  const slot = new Map<string, number>();
  layers[0].forEach((n, i) => slot.set(n, i));
  for (let d = 1; d < layers.length; d += 1) {
    const scored = layers[d].map((n) => {
      const ps = (parents.get(n) ?? []).filter((p) => slot.has(p));
      const score = ps.length
        ? ps.reduce((acc, p) => acc + (slot.get(p) ?? 0), 0) / ps.length
        : Number.MAX_SAFE_INTEGER; // parentless stragglers go last
      return { n, score };
    });
    scored.sort((a, b) => a.score - b.score || (a.n < b.n ? -1 : 1));
    layers[d] = scored.map((s) => s.n);
    layers[d].forEach((n, i) => slot.set(n, i));
  }

  const widest = Math.max(1, ...layers.map((l) => l.length));
  const width = 2 * MARGIN + (widest - 1) * X_GAP;
  const positions: Record<string, NodePosition> = {};
  layers.forEach((names, d) => {
    const rowWidth = (names.length - 1) * X_GAP;
    const left = MARGIN + (width - 2 * MARGIN - rowWidth) / 2;
    names.forEach((name, i) => {
      positions[name] = {
        name,
        layer: d,
        x: left + i * X_GAP,
        y: MARGIN + d * Y_GAP,
      };
    });
  });

  return {
    layers,
    positions,
    width,
    height: 2 * MARGIN + depth * Y_GAP,
  };
}
