export { WidgetClient, type Transport, type ErrorBody } from './client.js';
export {
  interceptEvent,
  mapEventToInteraction,
  type ActionDispatchBody,
  type UiEvent,
  type UiEventType,
} from './events.js';
export { HistoryPanel, type HistoryRow, type HistoryUpdateBody } from './history.js';
export {
  decodeFrame,
  encodeFrame,
  makeEnvelope,
  validateEnvelope,
  InOrderBuffer,
  ProtocolViolation,
  FRONTEND_TO_KERNEL,
  KERNEL_TO_FRONTEND,
  PROTOCOL_VERSION,
  type Direction,
  type Envelope,
  type MsgType,
} from './protocol.js';
export {
  renderComponent,
  WidgetView,
  DECISION_OPTIONS,
  type ComponentKind,
  type ComponentSpec,
  type RenderSpec,
  type StateUpdateBody,
  type SubView,
  type ViewNode,
} from './view.js';
