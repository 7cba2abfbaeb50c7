import { ChatApi } from './api.js';
import { ChatController } from './controller.js';
import { mountChat } from './render.js';

const params = new URLSearchParams(window.location.search);
const serviceUrl = params.get('service') ?? 'http://127.0.0.1:8080';
const pagePath = params.get('page') ?? 'home.html';

const root = document.getElementById('app');
if (!root) throw new Error('missing #app element');

const controller = new ChatController(new ChatApi(serviceUrl), pagePath, () => rerender());
const rerender = mountChat(root, controller);
void controller.start();
