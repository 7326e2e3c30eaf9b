/**
 * The widget view: one sub-view per declared component, rendered purely from
 * (render_spec, latest state_update).
 *
 * Rendering targets a lightweight element tree (`ViewNode`) so the layer is
 * host-agnostic: a DOM adapter can mount the tree 1:1, and tests can assert on
 * it directly. A sub-view re-renders only when its own payload key changes.
 */

export type ComponentKind = 'graph' | 'bar_chart' | 'table' | 'decision_table' | 'text_panel';

export interface ComponentSpec {
  component_id: string;
  kind: ComponentKind;
  title: string;
  bindings: Record<string, string>;
  data_key: string;
}

export interface RenderSpec {
  widget_type: string;
  components: ComponentSpec[];
}

export interface StateUpdateBody {
  state_id: number;
  payload: Record<string, unknown>;
}

export interface ViewNode {
  tag: string;
  attrs: Record<string, string>;
  children: ViewNode[];
  text?: string;
}

export const DECISION_OPTIONS = ['undecided', 'insert', 'ignore', 'defer'] as const;

function el(tag: string, attrs: Record<string, string> = {}, children: ViewNode[] = [], text?: string): ViewNode {
  return { tag, attrs, children, text };
}

function asEntries(data: unknown): Array<[string, unknown]> {
  if (Array.isArray(data)) {
    return data.map((entry, i) =>
      Array.isArray(entry) && entry.length === 2 ? [String(entry[0]), entry[1]] : [String(i), entry],
    );
  }
  if (data !== null && typeof data === 'object') {
    return Object.entries(data as Record<string, unknown>);
  }
  return [];
}

function renderBarChart(data: unknown): ViewNode {
  const bars = asEntries(data).map(([label, value]) =>
    el('div', { class: 'bar', 'data-label': label, 'data-value': String(value) }, [], label),
  );
  return el('div', { class: 'bar-chart' }, bars);
}

function renderGraph(data: unknown): ViewNode {
  const record = (data ?? {}) as Record<string, unknown>;
  const nodes = Array.isArray(record.nodes) ? record.nodes : [];
  const edges = Array.isArray(record.edges) ? record.edges : [];
  if (!Array.isArray(record.nodes) && record.type_nodes !== undefined) {
    // schema form: one node per node type, one edge per typed relation
    const typeNodes = Object.entries((record.type_nodes ?? {}) as Record<string, unknown>);
    const typeEdges = Array.isArray(record.type_edges) ? record.type_edges : [];
    return el('div', { class: 'graph schema' }, [
      el(
        'div',
        { class: 'nodes' },
        typeNodes.map(([name, count]) =>
          el('div', { class: 'node', 'data-id': name, 'data-count': String(count) }, [], name),
        ),
      ),
      el(
        'div',
        { class: 'edges' },
        typeEdges.map((edge) => {
          const e = edge as Record<string, unknown>;
          return el('div', {
            class: 'edge',
            'data-src': String(e.src_type),
            'data-rel': String(e.rel_type),
            'data-dst': String(e.dst_type),
          });
        }),
      ),
    ]);
  }
  return el('div', { class: 'graph' }, [
    el(
      'div',
      { class: 'nodes' },
      nodes.map((node) => {
        const n = node as Record<string, unknown>;
        return el('div', { class: 'node', 'data-id': String(n.id) }, [], String(n.title ?? n.id));
      }),
    ),
    el(
      'div',
      { class: 'edges' },
      edges.map((edge) => {
        const e = edge as Record<string, unknown>;
        return el('div', {
          class: 'edge',
          'data-src': String(e.src),
          'data-rel': String(e.type),
          'data-dst': String(e.dst),
        });
      }),
    ),
  ]);
}

function renderTable(data: unknown): ViewNode {
  const rows = Array.isArray(data)
    ? data.map((value, i) => el('tr', { 'data-row': String(i) }, [], typeof value === 'string' ? value : JSON.stringify(value)))
    : asEntries(data).map(([key, value]) => el('tr', { 'data-row': key }, [], JSON.stringify(value)));
  return el('table', { class: 'table' }, rows);
}

function renderDecisionTable(data: unknown): ViewNode {
  const rows = asEntries(data).map(([candidateId, row]) => {
    const record = (row ?? {}) as Record<string, unknown>;
    const menu = el(
      'select',
      { class: 'decision-menu', 'data-candidate': candidateId, 'data-selected': String(record.decision ?? 'undecided') },
      DECISION_OPTIONS.map((option) => el('option', { value: option }, [], option)),
    );
    return el('tr', { 'data-row': candidateId }, [
      el('td', { class: 'term' }, [], String(record.corpus_term ?? candidateId)),
      el('td', { class: 'entity' }, [], String(record.graph_entity_id ?? '')),
      el('td', { class: 'decision' }, [menu]),
    ]);
  });
  return el('table', { class: 'decision-table' }, rows);
}

function renderTextPanel(data: unknown): ViewNode {
  return el('div', { class: 'text-panel' }, [], typeof data === 'string' ? data : JSON.stringify(data ?? null));
}

export function renderComponent(spec: ComponentSpec, data: unknown): ViewNode {
  let inner: ViewNode;
  switch (spec.kind) {
    case 'bar_chart':
      inner = renderBarChart(data);
      break;
    case 'graph':
      inner = renderGraph(data);
      break;
    case 'table':
      inner = renderTable(data);
      break;
    case 'decision_table':
      inner = renderDecisionTable(data);
      break;
    case 'text_panel':
      inner = renderTextPanel(data);
      break;
    default:
      return el('div', { class: 'error-panel', 'data-component': spec.component_id }, [], `unknown component kind: ${String(spec.kind)}`);
  }
  return el('section', { class: 'component', 'data-component': spec.component_id }, [
    el('h3', {}, [], spec.title),
    inner,
  ]);
}

export interface SubView {
  spec: ComponentSpec;
  node: ViewNode;
  data: unknown;
  renderCount: number;
}

/**
 * Holds the mounted sub-views. `applyStateUpdate` re-renders only the
 * components whose payload key actually changed, and records the latest
 * state_update so the view remains a pure function of its inputs.
 */
export class WidgetView {
  readonly subviews = new Map<string, SubView>();
  private spec: RenderSpec | null = null;
  private lastUpdate: StateUpdateBody | null = null;
  private serialized = new Map<string, string>();

  applyRenderSpec(spec: RenderSpec): void {
    this.spec = spec;
    this.subviews.clear();
    this.serialized.clear();
    for (const component of spec.components) {
      this.subviews.set(component.component_id, {
        spec: component,
        node: renderComponent(component, undefined),
        data: undefined,
        renderCount: 0,
      });
    }
    if (this.lastUpdate !== null) {
      this.applyStateUpdate(this.lastUpdate);
    }
  }

  applyStateUpdate(body: StateUpdateBody): void {
    this.lastUpdate = body;
    for (const subview of this.subviews.values()) {
      const data = body.payload[subview.spec.data_key];
      const key = JSON.stringify(data ?? null);
      if (this.serialized.get(subview.spec.component_id) === key) {
        continue;
      }
      this.serialized.set(subview.spec.component_id, key);
      subview.data = data;
      subview.node = renderComponent(subview.spec, data);
      subview.renderCount += 1;
    }
  }

  renderSpec(): RenderSpec | null {
    return this.spec;
  }

  latestState(): StateUpdateBody | null {
    return this.lastUpdate;
  }

  component(componentId: string): SubView | undefined {
    return this.subviews.get(componentId);
  }

  renderedData(componentId: string): unknown {
    return this.subviews.get(componentId)?.data;
  }

  renderCount(componentId: string): number {
    return this.subviews.get(componentId)?.renderCount ?? 0;
  }
}
