"""
Completion providers.

Every provider is a langchain ``BaseChatModel``, so the loop only ever calls
``invoke(prompt_text)``. Local models can be plugged in through
``langchain_ollama.ChatOllama`` (the ``ollama`` extra).
"""

import json
import os
import threading
from pathlib import Path
from typing import Any, Optional, Union

import requests
from langchain_core.callbacks import CallbackManagerForLLMRun
from langchain_core.language_models.chat_models import BaseChatModel
from langchain_core.messages import AIMessage, BaseMessage
from langchain_core.outputs import ChatGeneration, ChatResult
from loguru import logger
from pydantic import Field, PrivateAttr

from ..errors import ConfigError, ProviderError

API_KEY_ENV = "LEXGRAPH_API_KEY"
_ROLES = {"human": "user", "ai": "assistant", "system": "system"}


def _result(text: str) -> ChatResult:
    return ChatResult(generations=[ChatGeneration(message=AIMessage(content=text))])


def _prompt_text(messages: list[BaseMessage]) -> str:
    return "\n\n".join(str(m.content) for m in messages)


class ScriptedChatModel(BaseChatModel):
    """
    Deterministic mock that replays ``responses`` in order and then keeps
    repeating the last one. Safe to call from several threads.
    """

    responses: list[str] = Field(min_length=1)
    _calls: int = PrivateAttr(default=0)
    _prompts: list[str] = PrivateAttr(default_factory=list)
    _lock: Any = PrivateAttr(default_factory=threading.Lock)

    @property
    def _llm_type(self) -> str:
        return "lexgraph-scripted"

    @property
    def call_count(self) -> int:
        return self._calls

    @property
    def prompts(self) -> list[str]:
        return list(self._prompts)

    def _generate(
        self,
        messages: list[BaseMessage],
        stop: Optional[list[str]] = None,
        run_manager: Optional[CallbackManagerForLLMRun] = None,
        **kwargs: Any,
    ) -> ChatResult:
        with self._lock:
            index = self._calls
            self._calls += 1
            self._prompts.append(_prompt_text(messages))
        return _result(self.responses[min(index, len(self.responses) - 1)])


def load_mock_script(path: Union[str, Path]) -> list[str]:
    """Read a ``.mock.json`` script: a list of responses, or ``{"responses": [...]}``."""
    try:
        with open(path, encoding="utf-8") as handle:
            document = json.load(handle)
    except OSError as e:
        raise ConfigError(f"cannot open mock script {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise ConfigError(f"{path}:{e.lineno}:{e.colno}: {e.msg}") from e
    responses = document.get("responses") if isinstance(document, dict) else document
    if (
        not isinstance(responses, list)
        or not responses
        or not all(isinstance(r, str) for r in responses)
    ):
        raise ConfigError(f"{path}: mock script must be a non-empty list of strings")
    return responses


class HttpChatModel(BaseChatModel):
    """
    JSON chat-completion client: posts ``{"model", "messages", "temperature"}``
    and reads ``choices[0].message.content``. The bearer key is read from the
    environment variable named by ``api_key_env`` on every call.
    """

    endpoint: str
    model: str = ""
    api_key_env: str = API_KEY_ENV
    timeout: float = 60.0
    temperature: float = 0.0

    @property
    def _llm_type(self) -> str:
        return "lexgraph-http"

    def _generate(
        self,
        messages: list[BaseMessage],
        stop: Optional[list[str]] = None,
        run_manager: Optional[CallbackManagerForLLMRun] = None,
        **kwargs: Any,
    ) -> ChatResult:
        payload: dict[str, Any] = {
            "model": self.model,
            "messages": [
                {"role": _ROLES.get(m.type, "user"), "content": str(m.content)} for m in messages
            ],
            "temperature": self.temperature,
        }
        if stop:
            payload["stop"] = stop
        headers = {"Content-Type": "application/json"}
        key = os.environ.get(self.api_key_env)
        if key:
            headers["Authorization"] = f"Bearer {key}"
        trace = logger.bind(trace=True)
        trace.debug(f"POST {self.endpoint} request body: {json.dumps(payload, ensure_ascii=False)}")
        try:
            response = requests.post(
                self.endpoint, json=payload, headers=headers, timeout=self.timeout
            )
            response.raise_for_status()
            body = response.json()
        except requests.RequestException as e:
            logger.error(f"Completion request to {self.endpoint} failed: {e}")
            raise ProviderError(f"completion request failed: {e}") from e
        except ValueError as e:
            logger.error(f"Completion endpoint returned non-JSON body: {e}")
            raise ProviderError(f"completion response is not JSON: {e}") from e
        trace.debug(f"POST {self.endpoint} response body: {json.dumps(body, ensure_ascii=False)}")
        try:
            content = body["choices"][0]["message"]["content"]
        except (KeyError, IndexError, TypeError) as e:
            raise ProviderError(f"unexpected completion response shape: {e!r}") from e
        return _result(str(content))


def ollama_chat_model(model: str, temperature: float = 0.0, **kwargs: Any) -> BaseChatModel:
    try:
        from langchain_ollama import ChatOllama  # type: ignore
    except ImportError as e:
        raise ConfigError("provider 'ollama' requires the lexgraph[ollama] extra") from e
    return ChatOllama(model=model, temperature=temperature, **kwargs)
