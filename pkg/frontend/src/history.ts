/**
 * The history panel: one row per recorded action, each with a Restore control.
 * Re-renders on every history_update so it stays synchronized with the widget.
 */

import type { ViewNode } from './view.js';

export interface HistoryRow {
  action_id: number;
  interaction_type: string;
  component_id: string;
  summary: string;
  state_id: number;
  restorable: boolean;
}

export interface HistoryUpdateBody {
  rows: HistoryRow[];
}

export class HistoryPanel {
  private rowsData: HistoryRow[] = [];
  private rendered: ViewNode = { tag: 'div', attrs: { class: 'history' }, children: [] };
  renderCount = 0;

  constructor(private readonly onRestore: (stateId: number) => void) {}

  apply(body: HistoryUpdateBody): void {
    this.rowsData = body.rows.slice();
    this.rendered = {
      tag: 'div',
      attrs: { class: 'history' },
      children: this.rowsData.map((row) => ({
        tag: 'div',
        attrs: { class: 'history-row', 'data-action': String(row.action_id), 'data-state': String(row.state_id) },
        children: row.restorable
          ? [{ tag: 'button', attrs: { class: 'restore', 'data-state': String(row.state_id) }, children: [], text: 'Restore' }]
          : [],
        text: row.summary,
      })),
    };
    this.renderCount += 1;
  }

  get rows(): readonly HistoryRow[] {
    return this.rowsData;
  }

  node(): ViewNode {
    return this.rendered;
  }

  /** Simulates pressing the Restore button on row `index`. */
  clickRestore(index: number): void {
    const row = this.rowsData[index];
    if (row === undefined || !row.restorable) {
      return;
    }
    this.onRestore(row.state_id);
  }
}
