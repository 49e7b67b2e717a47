#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
The support for l10n/i18n.

File:
    project: RepQuest
    name: repquest_locale.py
    version: 0.1.0.0
    date: 19.10.2026

Authors:
    RepQuest contributors

Copyright (c) 2026 RepQuest contributors.
"""

#  Copyright (c) 2023 Sławomir Marczyński, (c) 2026 RepQuest contributors.
#  All rights reserved.
#  Redistribution and use in source and binary forms, with or without
#  modification, are permitted provided that the following conditions
#  are met: 1. Redistributions of source code must retain the above
#  copyright notice, this list of conditions and the following
#  disclaimer. 2. Redistributions in binary form must reproduce the
#  above copyright notice, this list of conditions and the following
#  disclaimer in the documentation and/or other materials provided with
#  the distribution. 3. Neither the name of the copyright holder nor
#  the names of its contributors may be used to endorse or promote
#  products derived from this software without specific prior written
#  permission. THIS SOFTWARE IS PROVIDED BY THE COPYRIGHT HOLDERS AND
#  CONTRIBUTORS "AS IS" AND ANY EXPRESS OR IMPLIED WARRANTIES, INCLUDING,
#  BUT NOT LIMITED TO, THE IMPLIED WARRANTIES OF MERCHANTABILITY AND
#  FITNESS FOR A PARTICULAR PURPOSE ARE DISCLAIMED. IN NO EVENT SHALL
#  THE COPYRIGHT HOLDER OR CONTRIBUTORS BE LIABLE FOR ANY DIRECT,
#  INDIRECT, INCIDENTAL, SPECIAL, EXEMPLARY, OR CONSEQUENTIAL DAMAGES
#  (INCLUDING, BUT NOT LIMITED TO, PROCUREMENT OF SUBSTITUTE GOODS OR
#  SERVICES; LOSS OF USE, DATA, OR PROFITS; OR BUSINESS INTERRUPTION)
#  HOWEVER CAUSED AND ON ANY THEORY OF LIABILITY, WHETHER IN CONTRACT,
#  STRICT LIABILITY, OR TORT (INCLUDING NEGLIGENCE OR OTHERWISE)
#  ARISING IN ANY WAY OUT OF THE USE OF THIS SOFTWARE, EVEN IF ADVISED
#  OF THE POSSIBILITY OF SUCH DAMAGE.

import gettext
import locale
import os


def get_supported_locales():
    return ('en_US',)


def get_default_locale_code():
    """
    Language code of the current user, if it is a supported one.

    Returns:
        str: a locale code like 'en_US'; the first supported locale when
            the system locale is unknown or unsupported.
    """
    lang = None
    try:
        lang, __ = locale.getlocale()
    except ValueError:
        pass
    if not lang:
        for variable in ('LANGUAGE', 'LC_ALL', 'LC_MESSAGES', 'LANG'):
            value = os.environ.get(variable)
            if value:
                lang = value.split(':')[0].split('.')[0]
                break
    supported = get_supported_locales()
    if lang not in supported:
        lang = supported[0]
    return lang


def setup_locale_translation_gettext(messages_domain='messages'):
    """
    Setup the translation of messages according to the system configuration.

    Notes:
        Numeric formatting is never localized here. Every number written
        by RepQuest goes through repr() or format(), which are locale
        independent, so the process locale is left as it is.

    Args:
        messages_domain (str): the name of the messages' domain,
            i.e. a name of the mo-file.

    Returns:
        gettext function to translate strings.
    """
    lang = get_default_locale_code()
    directory = os.path.dirname(__file__)
    localedir = os.path.join(directory, 'locale')
    translation = gettext.translation(messages_domain, localedir=localedir,
                                      languages=[lang], fallback=True)
    return translation.gettext


def setup_locale_csv_format(locale_code='en_US'):
    """
    Settings of the csv.writer dialect used for result files.

    Result files are always written in the en_US convention: UTF-8, comma
    separated, Unix line ends and numbers from repr(), so that a rerun
    gives byte-identical files on every machine.

    Args:
        locale_code: 'en_US', or none or empty or False for the same.

    Returns:
        dict: 'encoding' for open() and 'delimiter' and 'lineterminator'
            for csv.writer().

    Raises:
        ValueError: for any other locale code.
    """
    if locale_code and locale_code != 'en_US':
        raise ValueError(locale_code)
    return {'encoding': 'utf-8', 'delimiter': ',', 'lineterminator': '\n'}
