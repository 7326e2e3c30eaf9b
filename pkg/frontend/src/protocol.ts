/**
 * Wire protocol shared with the kernel side.
 *
 * One JSON document per frame, top-level keys exactly
 * `protocol_version, widget_id, seq, msg_type, body`. Sequence numbers
 * increase strictly per (widget, direction); each msg_type travels in exactly
 * one direction.
 */

export const PROTOCOL_VERSION = '1.0';

export type MsgType =
  | 'ready'
  | 'render_spec'
  | 'state_update'
  | 'history_update'
  | 'action_dispatch'
  | 'restore_request'
  | 'error';

export type Direction = 'frontend_to_kernel' | 'kernel_to_frontend';

export const FRONTEND_TO_KERNEL: ReadonlySet<MsgType> = new Set([
  'ready',
  'action_dispatch',
  'restore_request',
]);

export const KERNEL_TO_FRONTEND: ReadonlySet<MsgType> = new Set([
  'render_spec',
  'state_update',
  'history_update',
  'error',
]);

const FRAME_KEYS = ['protocol_version', 'widget_id', 'seq', 'msg_type', 'body'];
const ALL_MSG_TYPES: ReadonlySet<string> = new Set([...FRONTEND_TO_KERNEL, ...KERNEL_TO_FRONTEND]);

export interface Envelope {
  protocol_version: string;
  widget_id: string;
  seq: number;
  msg_type: MsgType;
  body: unknown;
}

export class ProtocolViolation extends Error {}

export function validateEnvelope(env: Envelope, direction?: Direction): void {
  if (env.protocol_version !== PROTOCOL_VERSION) {
    throw new ProtocolViolation(`unsupported protocol_version: ${env.protocol_version}`);
  }
  if (typeof env.widget_id !== 'string') {
    throw new ProtocolViolation('widget_id must be a string');
  }
  if (!Number.isInteger(env.seq) || env.seq < 0) {
    throw new ProtocolViolation(`seq must be a non-negative integer, got ${env.seq}`);
  }
  if (!ALL_MSG_TYPES.has(env.msg_type)) {
    throw new ProtocolViolation(`unknown msg_type: ${env.msg_type}`);
  }
  if (direction !== undefined) {
    const allowed = direction === 'frontend_to_kernel' ? FRONTEND_TO_KERNEL : KERNEL_TO_FRONTEND;
    if (!allowed.has(env.msg_type)) {
      throw new ProtocolViolation(`msg_type ${env.msg_type} may not travel ${direction}`);
    }
  }
}

export function encodeFrame(env: Envelope, direction?: Direction): string {
  validateEnvelope(env, direction);
  return JSON.stringify({
    protocol_version: env.protocol_version,
    widget_id: env.widget_id,
    seq: env.seq,
    msg_type: env.msg_type,
    body: env.body,
  });
}

export function decodeFrame(text: string, direction?: Direction): Envelope {
  let obj: unknown;
  try {
    obj = JSON.parse(text);
  } catch (err) {
    throw new ProtocolViolation(`frame is not valid JSON: ${err}`);
  }
  if (obj === null || typeof obj !== 'object' || Array.isArray(obj)) {
    throw new ProtocolViolation('frame must be a JSON object');
  }
  const record = obj as Record<string, unknown>;
  const keys = Object.keys(record).sort();
  if (keys.length !== FRAME_KEYS.length || [...FRAME_KEYS].sort().some((k, i) => keys[i] !== k)) {
    throw new ProtocolViolation(`frame must have exactly the keys ${FRAME_KEYS.join(', ')}`);
  }
  const env = record as unknown as Envelope;
  validateEnvelope(env, direction);
  return env;
}

export function makeEnvelope(widgetId: string, seq: number, msgType: MsgType, body: unknown): Envelope {
  return { protocol_version: PROTOCOL_VERSION, widget_id: widgetId, seq, msg_type: msgType, body };
}

/**
 * Re-orders out-of-order arrivals: envelopes are released strictly in seq
 * order, buffering any that arrive early. Stale seqs (already released) are
 * dropped.
 */
export class InOrderBuffer {
  private expected = 0;
  private pending = new Map<number, Envelope>();

  push(env: Envelope): Envelope[] {
    if (env.seq < this.expected) {
      return [];
    }
    this.pending.set(env.seq, env);
    const released: Envelope[] = [];
    while (this.pending.has(this.expected)) {
      released.push(this.pending.get(this.expected)!);
      this.pending.delete(this.expected);
      this.expected += 1;
    }
    return released;
  }
}
