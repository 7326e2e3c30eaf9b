/**
 * Replays a kernel-recorded session (test/fixtures/explorer_session.json,
 * generated by scripts/generate_fixture.py against the real kernel package)
 * through the client, simulating the user gestures that produced the
 * frontend-direction frames and checking byte-level conformance both ways.
 */

import { readFileSync } from 'node:fs';
import { dirname, join } from 'node:path';
import { fileURLToPath } from 'node:url';

import { describe, expect, it } from 'vitest';

import { WidgetClient } from '../src/client.js';
import { decodeFrame, FRONTEND_TO_KERNEL, type Envelope } from '../src/protocol.js';
import type { StateUpdateBody } from '../src/view.js';

const FIXTURE = join(dirname(fileURLToPath(import.meta.url)), 'fixtures', 'explorer_session.json');

function loadFixture(): Envelope[] {
  return JSON.parse(readFileSync(FIXTURE, 'utf-8')) as Envelope[];
}

function runSession() {
  const frames = loadFixture();
  const sent: Envelope[] = [];
  const client = new WidgetClient('explorer', (frame) => sent.push(decodeFrame(frame)));

  for (const frame of frames) {
    if (!FRONTEND_TO_KERNEL.has(frame.msg_type)) {
      client.receiveFrame(JSON.stringify(frame));
      continue;
    }
    // reproduce the user gesture that the kernel transcript recorded
    if (frame.msg_type === 'ready') {
      client.ready();
    } else if (frame.msg_type === 'action_dispatch') {
      const body = frame.body as { component_id: string; element: { path: string; datum: unknown }; params: Record<string, unknown> };
      const emitted = client.intercept({
        type: 'click',
        componentId: body.component_id,
        datum: body.element.datum,
        params: body.params,
        path: body.element.path,
      });
      expect(emitted).toBe(true);
    } else {
      const body = frame.body as { state_id: number };
      const index = client.history.rows.findIndex((row) => row.state_id === body.state_id);
      expect(index).toBeGreaterThanOrEqual(0);
      client.history.clickRestore(index);
    }
    expect(sent[sent.length - 1]).toEqual(frame);
  }
  return { frames, sent, client };
}

describe('recorded kernel session', () => {
  it('reproduces every frontend frame byte-for-byte from simulated gestures', () => {
    const { frames, sent } = runSession();
    const expected = frames.filter((f) => FRONTEND_TO_KERNEL.has(f.msg_type));
    expect(sent).toEqual(expected);
  });

  it('keeps rendered data equal to payload[data_key] after every state update', () => {
    const frames = loadFixture();
    const client = new WidgetClient('explorer', () => {});
    for (const frame of frames) {
      if (FRONTEND_TO_KERNEL.has(frame.msg_type)) {
        continue;
      }
      client.receiveFrame(JSON.stringify(frame));
      if (frame.msg_type !== 'state_update') {
        continue;
      }
      const payload = (frame.body as StateUpdateBody).payload;
      for (const [componentId, subview] of client.view.subviews) {
        expect(client.view.renderedData(componentId)).toEqual(payload[subview.spec.data_key]);
      }
    }
    expect(client.errors).toEqual([]);
  });

  it('clicking node type Skill emits exactly one dispatch and re-renders both charts', () => {
    const frames = loadFixture();
    const sentFrames: Envelope[] = [];
    const client = new WidgetClient('explorer', (frame) => sentFrames.push(decodeFrame(frame)));

    // handshake: render_spec + state 0
    client.ready();
    client.receiveFrame(JSON.stringify(frames[1]));
    client.receiveFrame(JSON.stringify(frames[2]));
    const nodeChartBefore = client.view.renderCount('node-dist');
    const relChartBefore = client.view.renderCount('rel-dist');

    const dispatchesBefore = sentFrames.filter((f) => f.msg_type === 'action_dispatch').length;
    client.intercept({ type: 'click', componentId: 'schema-graph', datum: { node_type: 'Skill' } });
    const dispatches = sentFrames.filter((f) => f.msg_type === 'action_dispatch');
    expect(dispatches.length - dispatchesBefore).toBe(1);

    // the view must not have changed optimistically
    expect(client.view.renderCount('node-dist')).toBe(nodeChartBefore);
    expect(client.view.renderCount('rel-dist')).toBe(relChartBefore);

    // apply the kernel's state_update for the select; both charts re-render
    client.receiveFrame(JSON.stringify(frames[4]));
    expect(client.view.renderCount('node-dist')).toBe(nodeChartBefore + 1);
    expect(client.view.renderCount('rel-dist')).toBe(relChartBefore + 1);
    const payload = (frames[4].body as StateUpdateBody).payload;
    expect(client.view.renderedData('node-dist')).toEqual(payload.node_distribution);
    expect(client.view.renderedData('rel-dist')).toEqual(payload.relation_distribution);
  });

  it('clicking Restore on history row k emits restore_request with that state id', () => {
    const { client, sent } = runSession();
    const before = sent.length;
    client.history.clickRestore(0);
    expect(sent).toHaveLength(before + 1);
    const last = sent[sent.length - 1];
    expect(last.msg_type).toBe('restore_request');
    expect(last.body).toEqual({ state_id: client.history.rows[0].state_id });
  });

  it('applies out-of-order kernel frames in seq order', () => {
    const frames = loadFixture();
    const kernelFrames = frames.filter((f) => !FRONTEND_TO_KERNEL.has(f.msg_type));
    const client = new WidgetClient('explorer', () => {});
    // deliver the handshake pair swapped: state_update (seq 1) before render_spec (seq 0)
    client.receiveFrame(JSON.stringify(kernelFrames[1]));
    expect(client.view.subviews.size).toBe(0);
    client.receiveFrame(JSON.stringify(kernelFrames[0]));
    expect(client.view.subviews.size).toBe(3);
    const payload = (kernelFrames[1].body as StateUpdateBody).payload;
    expect(client.view.renderedData('node-dist')).toEqual(payload.node_distribution);
  });
});
