/**
 * The frontend half of one widget: routes inbound kernel envelopes (in seq
 * order, buffering out-of-order arrivals), owns the view and the history
 * panel, and emits exactly one action_dispatch per data-changing gesture.
 *
 * Rendering is strictly server-authoritative: nothing updates optimistically;
 * the view changes only when a state_update arrives.
 */

import { interceptEvent, type UiEvent } from './events.js';
import { HistoryPanel, type HistoryUpdateBody } from './history.js';
import {
  decodeFrame,
  encodeFrame,
  InOrderBuffer,
  makeEnvelope,
  type Envelope,
  type MsgType,
} from './protocol.js';
import { WidgetView, type ComponentSpec, type RenderSpec, type StateUpdateBody } from './view.js';

export type Transport = (frame: string) => void;

export interface ErrorBody {
  code: string;
  message: string;
  in_reply_to_seq?: number;
}

export class WidgetClient {
  readonly view = new WidgetView();
  readonly history: HistoryPanel;
  readonly errors: ErrorBody[] = [];

  private readonly inbound = new InOrderBuffer();
  private outboundSeq = 0;
  private components = new Map<string, ComponentSpec>();

  constructor(
    readonly widgetId: string,
    private readonly transport: Transport,
  ) {
    this.history = new HistoryPanel((stateId) => this.requestRestore(stateId));
  }

  // -- outbound ---------------------------------------------------------------

  private send(msgType: MsgType, body: unknown): void {
    const envelope = makeEnvelope(this.widgetId, this.outboundSeq, msgType, body);
    this.outboundSeq += 1;
    this.transport(encodeFrame(envelope, 'frontend_to_kernel'));
  }

  /** Opens the handshake; the kernel answers with render_spec + state_update. */
  ready(): void {
    this.send('ready', {});
  }

  /**
   * The Action Wrapper entry point: wraps a low-level UI event into an
   * action_dispatch. Unmapped or unbound events are dropped silently and
   * nothing is sent. No view change happens here.
   */
  intercept(event: UiEvent): boolean {
    const body = interceptEvent(this.components, event);
    if (body === null) {
      return false;
    }
    this.send('action_dispatch', body);
    return true;
  }

  requestRestore(stateId: number): void {
    this.send('restore_request', { state_id: stateId });
  }

  // -- inbound ----------------------------------------------------------------

  /** Feed one raw frame; out-of-order arrivals are buffered until their turn. */
  receiveFrame(frame: string): void {
    const envelope = decodeFrame(frame, 'kernel_to_frontend');
    this.receive(envelope);
  }

  receive(envelope: Envelope): void {
    if (envelope.widget_id !== this.widgetId) {
      return;
    }
    for (const released of this.inbound.push(envelope)) {
      this.apply(released);
    }
  }

  private apply(envelope: Envelope): void {
    switch (envelope.msg_type) {
      case 'render_spec': {
        const spec = envelope.body as RenderSpec;
        this.components = new Map(spec.components.map((c) => [c.component_id, c]));
        this.view.applyRenderSpec(spec);
        break;
      }
      case 'state_update':
        this.view.applyStateUpdate(envelope.body as StateUpdateBody);
        break;
      case 'history_update':
        this.history.apply(envelope.body as HistoryUpdateBody);
        break;
      case 'error':
        this.errors.push(envelope.body as ErrorBody);
        break;
      default:
        break;
    }
  }
}
