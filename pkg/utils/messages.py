# Все тексты сообщений командной строки
MESSAGES = {
    # Решение проблемы равенства
    'verdict_accept': '{index}: единица (бит состояния: {bits})',
    'verdict_reject': '{index}: не единица (бит состояния: {bits})',
    'verdict_oracle': '{index}: автомат {machine}, оракул {oracle}{mark}',
    'verdict_mismatch': ' ← расхождение',
    'check_summary': 'Слов: {words}, расхождений с оракулом: {mismatches}',

    # Шар
    'ball_summary': 'Шар радиуса {radius}: состояний {states}, бит {bits}',
    'ball_verified': 'Полная проверка: слов {words}, расхождений {mismatches}',

    # Трудные входы
    'hard_truth': 'Оракул: {truth}',
    'identity': 'единица',
    'non_identity': 'не единица',

    # История
    'history_empty': 'Сохранённых прогонов нет',

    # Ошибки
    'error_usage': 'Ошибка: {error}',
    'error_spec': 'Ошибка в выражении группы: {error}',
    'error_data': 'Ошибка в файле данных: {error}',
    'error_resource': 'Превышен лимит ресурсов: {error}',
    'error_overflow': 'Слово длиннее n: {error}',
}


def get_message(key: str, **kwargs) -> str:
    """Получить текст сообщения по ключу"""
    text = MESSAGES.get(key, key)
    if kwargs:
        text = text.format(**kwargs)
    return text
