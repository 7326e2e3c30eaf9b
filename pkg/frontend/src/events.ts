/**
 * The action wrapper: turns low-level UI events into protocol action
 * dispatches.
 *
 * Every emitted dispatch carries the component id of the originating
 * component. Events that map to no interaction type, or to one the component
 * does not bind, are ignored silently. The view itself is never touched here:
 * rendering changes only when a state_update comes back from the kernel.
 */

import type { ComponentKind, ComponentSpec } from './view.js';

export type UiEventType = 'click' | 'dblclick' | 'drag' | 'wheel' | 'row-click' | 'menu-select' | 'text-input';

export interface UiEvent {
  type: UiEventType;
  componentId: string;
  /** what was hit, e.g. {node_type: "Skill"} for a schema node or {label: "cooking"} for a bar */
  datum?: unknown;
  /** extra gesture context, e.g. {dx, dy} for drags or {decision} for menu picks */
  params?: Record<string, unknown>;
  path?: string;
}

export interface ActionDispatchBody {
  interaction_type: string;
  component_id: string;
  element: { path: string; datum: unknown };
  params: Record<string, unknown>;
}

const EVENT_MAP: Record<ComponentKind, Partial<Record<UiEventType, string>>> = {
  graph: { click: 'select', dblclick: 'deselect', drag: 'pan', wheel: 'zoom' },
  bar_chart: { click: 'select' },
  table: { 'row-click': 'select' },
  decision_table: { 'row-click': 'select', 'menu-select': 'set_decision' },
  text_panel: { 'text-input': 'input' },
};

/** Interactions that carry a target; without a datum the gesture means nothing. */
const NEEDS_DATUM = new Set(['select', 'set_decision']);

export function mapEventToInteraction(kind: ComponentKind, event: UiEvent): string | null {
  const interaction = EVENT_MAP[kind]?.[event.type];
  if (interaction === undefined) {
    return null;
  }
  if (NEEDS_DATUM.has(interaction) && (event.datum === undefined || event.datum === null)) {
    return null; // e.g. a click on chart whitespace
  }
  return interaction;
}

/**
 * Builds the dispatch body for a UI event, or null when the event is
 * unmapped, targets an unknown component, or hits an interaction the
 * component does not bind.
 */
export function interceptEvent(components: ReadonlyMap<string, ComponentSpec>, event: UiEvent): ActionDispatchBody | null {
  const spec = components.get(event.componentId);
  if (spec === undefined) {
    return null;
  }
  const interaction = mapEventToInteraction(spec.kind, event);
  if (interaction === null || !(interaction in spec.bindings)) {
    return null;
  }
  return {
    interaction_type: interaction,
    component_id: spec.component_id,
    element: { path: event.path ?? spec.component_id, datum: event.datum ?? null },
    params: event.params ?? {},
  };
}
