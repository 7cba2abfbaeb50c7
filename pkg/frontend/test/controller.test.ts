import assert from 'node:assert/strict';
import { test } from 'node:test';

import { ChatTransport, OpenSessionResult, ServiceError, ServiceReply } from '../src/api.js';
import { ChatController } from '../src/controller.js';

function reply(text: string): ServiceReply {
  return { text, kind: 'answer' };
}

class FakeTransport implements ChatTransport {
  opened = 0;
  sent: string[] = [];
  nextReply: ServiceReply = reply('fake answer');
  failOpen: Error | null = null;
  failSend: Error | null = null;
  pending: Array<(value: ServiceReply) => void> = [];
  hold = false;

  async openSession(_path: string, _debug: boolean): Promise<OpenSessionResult> {
    if (this.failOpen) throw this.failOpen;
    this.opened += 1;
    return { session_id: `s${this.opened}`, reply: reply('orientation text') };
  }

  async sendMessage(_sessionId: string, text: string, _debug: boolean): Promise<ServiceReply> {
    if (this.failSend) throw this.failSend;
    this.sent.push(text);
    if (this.hold) {
      return new Promise((resolve) => this.pending.push(resolve));
    }
    return this.nextReply;
  }

  release(): void {
    for (const resolve of this.pending.splice(0)) resolve(this.nextReply);
  }
}

test('start renders the opening orientation as the first bot turn', async () => {
  const transport = new FakeTransport();
  const controller = new ChatController(transport, 'home.html');
  assert.equal(await controller.start(), true);
  assert.deepEqual(controller.turns, [{ author: 'bot', text: 'orientation text', debug: undefined }]);
  assert.equal(controller.state, 'ready');
});

test('connection failure shows a retry banner and no turns', async () => {
  const transport = new FakeTransport();
  transport.failOpen = new Error('connect ECONNREFUSED');
  const controller = new ChatController(transport, 'home.html');
  assert.equal(await controller.start(), false);
  assert.equal(controller.turns.length, 0);
  assert.equal(controller.state, 'failed');
  assert.ok(controller.canRetry);
  assert.match(controller.notice ?? '', /Retry/);

  transport.failOpen = null;
  assert.equal(await controller.start(), true);
  assert.equal(controller.turns.length, 1);
});

test('send appends the user turn immediately and the bot turn on reply', async () => {
  const transport = new FakeTransport();
  const controller = new ChatController(transport, 'home.html');
  await controller.start();

  transport.hold = true;
  const sending = controller.send('hello there');
  assert.equal(controller.turns.at(-1)?.author, 'user');
  assert.equal(controller.turns.at(-1)?.text, 'hello there');
  assert.equal(controller.state, 'in_flight');

  transport.nextReply = reply('hi back');
  transport.release();
  assert.equal(await sending, true);
  assert.equal(controller.turns.at(-1)?.author, 'bot');
  assert.equal(controller.turns.at(-1)?.text, 'hi back');
  assert.equal(controller.state, 'ready');
});

test('a second send is blocked client-side while one is in flight', async () => {
  const transport = new FakeTransport();
  const controller = new ChatController(transport, 'home.html');
  await controller.start();

  transport.hold = true;
  const first = controller.send('first');
  assert.equal(await controller.send('second'), false);
  assert.equal(transport.sent.length, 1);
  transport.release();
  await first;
  assert.deepEqual(transport.sent, ['first']);
});

test('turn ordering follows request ordering', async () => {
  const transport = new FakeTransport();
  const controller = new ChatController(transport, 'home.html');
  await controller.start();
  for (const [i, text] of ['one', 'two', 'three'].entries()) {
    transport.nextReply = reply(`answer ${i + 1}`);
    await controller.send(text);
  }
  assert.deepEqual(
    controller.turns.map((t) => `${t.author}:${t.text}`),
    [
      'bot:orientation text',
      'user:one', 'bot:answer 1',
      'user:two', 'bot:answer 2',
      'user:three', 'bot:answer 3',
    ],
  );
});

test('empty input is not sent', async () => {
  const transport = new FakeTransport();
  const controller = new ChatController(transport, 'home.html');
  await controller.start();
  assert.equal(await controller.send('   '), false);
  assert.equal(transport.sent.length, 0);
});

test('409 withdraws the user turn and shows a notice', async () => {
  const transport = new FakeTransport();
  const controller = new ChatController(transport, 'home.html');
  await controller.start();
  transport.failSend = new ServiceError(409, 'a turn is already in flight');
  assert.equal(await controller.send('hello'), false);
  assert.equal(controller.turns.length, 1); // just the orientation
  assert.match(controller.notice ?? '', /still answering/);
  assert.equal(controller.state, 'ready');
});

test('410 marks the session expired and offers a restart', async () => {
  const transport = new FakeTransport();
  const controller = new ChatController(transport, 'home.html');
  await controller.start();
  transport.failSend = new ServiceError(410, 'session expired');
  assert.equal(await controller.send('hello'), false);
  assert.equal(controller.state, 'expired');
  assert.ok(controller.canRestart);
  assert.match(controller.notice ?? '', /expired/);

  transport.failSend = null;
  assert.equal(await controller.restart(), true);
  assert.equal(controller.sessionId, 's2'); // fresh session id
  assert.equal(controller.turns.length, 1); // empty history, new orientation
});

test('changes notify the listener', async () => {
  const transport = new FakeTransport();
  let notified = 0;
  const controller = new ChatController(transport, 'home.html', () => { notified += 1; });
  await controller.start();
  await controller.send('ping');
  controller.setDebug(true);
  assert.ok(notified >= 5);
});
